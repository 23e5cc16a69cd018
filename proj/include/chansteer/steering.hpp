#pragma once

#include "chansteer/channels.hpp"
#include "chansteer/sdp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chansteer {

// POVM family {M_{a|x}} on Alice's space, one POVM per setting x.
struct MeasurementAssemblage {
  std::vector<std::vector<Operator>> povms; // [x][a]
  int settings() const { return static_cast<int>(povms.size()); }
  int outcomes() const { return static_cast<int>(povms.at(0).size()); }
  int dim() const { return static_cast<int>(povms.at(0).at(0).rows()); }
};

MeasurementAssemblage make_measurement_assemblage(std::vector<std::vector<Operator>> povms);

// {rho_{a|x}} with a setting-independent total; small consistency drift is
// repaired by averaging, larger drift is a hard error.
struct StateAssemblage {
  std::vector<std::vector<Operator>> members; // [x][a]
  bool repaired = false;
  int settings() const { return static_cast<int>(members.size()); }
  int outcomes() const { return static_cast<int>(members.at(0).size()); }
  int dim() const { return static_cast<int>(members.at(0).at(0).rows()); }
  Operator total() const;
};

StateAssemblage make_state_assemblage(std::vector<std::vector<Operator>> members);

struct ChannelAssemblage {
  std::vector<std::vector<Subchannel>> members; // [x][a]
  int settings() const { return static_cast<int>(members.size()); }
  int outcomes() const { return static_cast<int>(members.at(0).size()); }
};

ChannelAssemblage make_channel_assemblage(std::vector<std::vector<Subchannel>> members);

// All response functions lambda: x -> a, enumerated as base-k digit strings.
struct DeterministicStrategySet {
  int settings = 0, outcomes = 0;
  int size() const;
  int response(int strategy, int x) const; // a = digit x of strategy
};

DeterministicStrategySet enumerate_strategies(int settings, int outcomes, int cap = 4096);

struct SolverDiagnostics {
  std::string status;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

struct SteeringVerdict {
  bool steerable = false;
  double value = 0.0; // 0 when unsteerable; quantifier value otherwise
  bool boundary = false; // value within the (1e-8, 1e-7) tie band
  std::vector<Operator> model;                 // unsteerable: {X_lambda}
  std::vector<std::vector<Operator>> witness;  // steerable: F_{a|x}, indexed [x][a]
  SolverDiagnostics diagnostics;
};

// Lambda_{a|x}[X] = Tr_A(M_{a|x} Lambda^{C->AB}[X]) at the Choi level.
ChannelAssemblage induced_channel_assemblage(const ChannelExtension& e,
                                             const MeasurementAssemblage& ma);

// J of every member; consistency is inherited by linearity.
StateAssemblage choi_state_assemblage(const ChannelAssemblage& ca);

// SDP feasibility of a local-hidden-state model over deterministic strategies.
SteeringVerdict test_unsteerable(const StateAssemblage& sa);

SteeringVerdict steering_robustness(const StateAssemblage& sa);

SteeringVerdict steerable_weight(const StateAssemblage& sa);

enum class Quantifier { Robustness, Weight };
enum class InputMode { Choi, Search };

// Quantifier of the extension: exact at the maximally entangled input, with an
// optional Schmidt-coefficient search over pure inputs (d_C <= 4).
double channel_quantifier(const ChannelExtension& e, const MeasurementAssemblage& ma,
                          Quantifier q, InputMode mode);

struct Theorem1Report {
  SteeringVerdict via_channel_assemblage;
  SteeringVerdict via_choi_state;
  double sr_channel = 0.0;
  double sr_state = 0.0;
  bool agree = false;
};

// Two independent routes to the same steerability verdict.
Theorem1Report verify_theorem1(const ChannelExtension& e, const MeasurementAssemblage& ma);

struct Theorem2Report {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  bool consistent = true; // false only when an incoherence claim meets a PPT violation
  std::string note;
};

// PPT of J(e) across A:BC'. Necessary for incoherence; PPT alone does not
// certify it.
Theorem2Report theorem2_necessary_check(const ChannelExtension& e, bool claimed_incoherent = false);

struct CovarianceReport {
  double identity_error = 0.0; // Frobenius gap between the two assemblages
  StateAssemblage processed;
  StateAssemblage dual_processed;
};

// Processing Alice's output by Gamma equals processing the POVMs by the dual
// map: the testable core of steering monotonicity under local operations.
CovarianceReport local_processing_covariance(const ChannelExtension& e, const Channel& gamma,
                                             const MeasurementAssemblage& ma);

struct Prop1Reconstruction {
  ChannelExtension extension;
  MeasurementAssemblage ma;
};

// The constructive converse of Proposition 1: the pointer extension and the
// diagonal measurement assemblage rebuilt from an unsteerable model.
Prop1Reconstruction reconstruct_pointer_extension(const std::vector<Operator>& model, int settings,
                                                  int outcomes, int d_in);

// Steered assemblage of a bipartite state (Alice first): Tr_A[(M (x) I) rho].
StateAssemblage steered_assemblage(const Operator& rho, int d_A, const MeasurementAssemblage& ma);

// Apply a channel to one tensor factor of a multipartite operator.
Operator apply_to_subsystem(const Operator& state, const DimSpec& dims, int subsystem,
                            const Channel& gamma);

MeasurementAssemblage xz_measurements();
MeasurementAssemblage random_measurements(int dim, int settings, int outcomes, std::uint64_t seed);

} // namespace chansteer
