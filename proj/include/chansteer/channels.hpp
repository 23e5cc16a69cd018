#pragma once

#include "chansteer/operator.hpp"

#include <cstdint>
#include <vector>

namespace chansteer {

// Choi operators use the unit-trace maximally entangled state, so J(channel)
// has trace 1. Subsystem order for plain channels is (C', out); for
// extensions it is (C', A, B). The unnormalized convention differs by a
// factor d_in.

struct Channel {
  Operator choi; // on C' (x) out
  int d_in = 0;
  DimSpec d_out;

  int out_total() const { return d_out.total(); }
  DimSpec full_dims() const;
};

struct Subchannel {
  Operator choi; // trace-non-increasing: Tr_out(choi) <= I/d_in
  int d_in = 0;
  DimSpec d_out;
  DimSpec full_dims() const;
};

struct KrausSet {
  std::vector<Operator> ops; // each d_out x d_in
  int d_in = 0;
  int d_out = 0;
};

struct StinespringIsometry {
  Operator V; // (d_A*d_B) x d_C, A-major row blocks
  int d_C = 0, d_A = 0, d_B = 0;
};

struct Instrument {
  std::vector<Subchannel> members;
  int d_in() const { return members.at(0).d_in; }
  int d_out() const { return members.at(0).d_out.total(); }
  Operator total_choi() const;
};

// Broadcast channel C -> A (x) B with a declared output split.
struct ChannelExtension {
  Operator choi; // on (C', A, B)
  int d_C = 0, d_A = 0, d_B = 0;
  DimSpec full_dims() const { return DimSpec{d_C, d_A, d_B}; }
};

enum class EbStatus { EbCertified, NotEb, Inconclusive };

// Validating constructors; tolerances follow the module contracts.
Channel make_channel(Operator choi, int d_in, DimSpec d_out);
Subchannel make_subchannel(Operator choi, int d_in, DimSpec d_out);
Instrument make_instrument(std::vector<Subchannel> members);
ChannelExtension make_extension(Operator choi, int d_C, int d_A, int d_B);

Channel choi_from_kraus(const KrausSet& k);
KrausSet kraus_from_choi(const Channel& c);
KrausSet kraus_from_subchannel(const Subchannel& c);
StinespringIsometry stinespring_from_kraus(const KrausSet& k);

// The canonical dilation extension rho -> V rho V^dagger with outputs (A, B).
ChannelExtension extension_from_isometry(const StinespringIsometry& v);

// Channel action on a state of C (x) D; the ancilla D of dimension ancilla_dim
// is untouched. Output lives on out (x) D.
Operator apply(const Channel& c, const Operator& rho, int ancilla_dim = 1);
Operator apply_subchannel(const Subchannel& c, const Operator& rho, int ancilla_dim = 1);

enum class Receiver { A, B };

Channel marginal(const ChannelExtension& e, Receiver keep);

// sum_lambda Lambda_lambda (x) sigma_lambda, reordered to (C', A, B).
ChannelExtension incoherent_extension(const Instrument& inst, const std::vector<Operator>& states);

// Incoherent extension with orthonormal pointer states |lambda>.
ChannelExtension pointer_extension(const Instrument& inst);

// sum_i K_i . K_i^dagger (x) |i><i|: which-Kraus information made classical.
ChannelExtension kraus_pointer_extension(const KrausSet& k);

// Convex mixture of whole channels with pointer states; the hidden-channel
// special case of the incoherent form.
ChannelExtension channel_convex_extension(const std::vector<Channel>& channels,
                                          const std::vector<double>& probs);

// The A-marginal: environment's view of the transformation.
Channel complementary(const ChannelExtension& e);

// PPT across C':out. Not PPT is conclusive; PPT certifies entanglement
// breaking only at total dimension <= 6.
EbStatus eb_check(const Channel& c);

// M_lambda = (Lambda_lambda)^dagger[I]; completeness sums to I.
std::vector<Operator> povm_from_instrument(const Instrument& inst);

// The extension X -> X^A (x) sigma^B of the fixed-output channel.
ChannelExtension fixed_output_extension(const Operator& sigma, int d_C);

ChannelExtension random_extension(int d_C, int d_A, int d_B, std::uint64_t seed);

// Random instrument from a Haar isometry with a measured pointer environment.
Instrument random_instrument(int d_in, int d_out, int members, std::uint64_t seed);

Channel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed);

Operator random_density(int d, std::uint64_t seed);

Operator haar_isometry(int rows, int cols, std::uint64_t seed);

} // namespace chansteer
