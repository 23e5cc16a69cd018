#pragma once

#include "chansteer/steering.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace chansteer {

// Opaque evaluator: (input density on C (x) D, setting x) -> per outcome a a
// pair (probability, conditional output density on B (x) D). The ancilla D is
// inferred from the input's dimensions and passes through untouched.
struct BlackBox {
  int d_C = 0, d_B = 0;
  std::function<std::vector<std::pair<double, Operator>>(const Operator&, int)> eval;
};

// Simulated box over a concrete extension and Alice's announced outcomes.
BlackBox black_box_from_extension(const ChannelExtension& e, const MeasurementAssemblage& ma);

// Probe densities on C for product-mode tomography.
struct ProbeSet {
  std::vector<Operator> states;
};

// Qubits: {|0>, |1>, |+>, |+i>}; higher dimensions: the generalized set
// {|j>, (|j>+|k>)/sqrt(2), (|j>+i|k>)/sqrt(2)}.
ProbeSet default_probes(int d);

// Feed psi+ on C (x) C'; J(Lambda_{a|x}) = probability x conditional output,
// reordered from (B, C') to (C', B). Noiseless linear inversion.
ChannelAssemblage reconstruct_ancilla(const BlackBox& bb, int x_count, int a_count);

// Least-squares inversion of each subchannel's action from product probes.
// Throws if the probes do not span the operator space (rank threshold 1e-9).
ChannelAssemblage reconstruct_products(const BlackBox& bb, const ProbeSet& probes, int x_count,
                                       int a_count);

} // namespace chansteer
