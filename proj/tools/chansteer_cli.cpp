#include "chansteer/json_io.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace chansteer;

namespace {

void emit(const json& doc, const std::string& output) {
  if (output.empty())
    std::cout << doc.dump(2) << "\n";
  else
    save_json(output, doc);
}

json result_doc(const std::string& command) {
  return json{{"tool", "chansteer"}, {"version", kToolVersion}, {"command", command},
              {"status", "ok"}};
}

// Accept both bare payloads and result documents written by this tool, so
// command outputs can be fed straight back in.
json load_payload(const std::string& path) {
  json j = load_json(path);
  if (j.is_object() && j.contains("result") && j.contains("tool")) return j["result"];
  return j;
}

StateAssemblage load_assemblage(const std::string& path, bool channel_form) {
  json j = load_payload(path);
  if (channel_form) return choi_state_assemblage(channel_assemblage_from_json(j));
  return state_assemblage_from_json(j);
}

double quantify(const StateAssemblage& sa, const std::string& measure, SteeringVerdict* out) {
  SteeringVerdict v = (measure == "weight") ? steerable_weight(sa) : steering_robustness(sa);
  if (out) *out = v;
  return v.value;
}

// The X/Z assemblage of psi+ mixed with white noise at visibility gamma.
StateAssemblage werner_xz(double gamma) {
  StateAssemblage pure = steered_assemblage(max_entangled(2), 2, xz_measurements());
  std::vector<std::vector<Operator>> members;
  for (const auto& row : pure.members) {
    std::vector<Operator> r;
    for (const auto& m : row)
      r.push_back(Operator(gamma * m + (1.0 - gamma) * 0.25 * identity(2)));
    members.push_back(std::move(r));
  }
  return make_state_assemblage(std::move(members));
}

KrausSet dephasing_kraus() {
  return KrausSet{{Operator(0.5 * (identity(2) + pauli_z())),
                   Operator(0.5 * (identity(2) - pauli_z()))},
                  2, 2};
}

int run(int argc, char** argv) {
  CLI::App app{"chansteer: channel steering toolkit"};
  app.require_subcommand(1);
  double tol = 1e-9;
  app.add_option("--tol", tol, "solver gap/residual target (default 1e-9)");

  std::string input, output, from, to, ext_path, povm_path, asm_path, mode = "choi",
                                                                      measure = "robustness";
  std::uint64_t seed = 1;
  bool channel_form = false, eb = false;

  auto* convert = app.add_subcommand("convert", "convert channel representations");
  convert->add_option("--from", from, "kraus|choi|stinespring")->required();
  convert->add_option("--to", to, "kraus|choi|stinespring")->required();
  convert->add_option("--input", input)->required();
  convert->add_option("--output", output);

  auto* assemblage = app.add_subcommand("assemblage", "induced channel assemblage");
  assemblage->add_option("--extension", ext_path)->required();
  assemblage->add_option("--povms", povm_path)->required();
  assemblage->add_option("--output", output);

  auto* certify = app.add_subcommand("certify", "unsteerability test with certificate");
  certify->add_option("--assemblage", asm_path)->required();
  certify->add_flag("--channel-form", channel_form, "input is a channel assemblage");
  certify->add_option("--output", output);

  auto* robustness = app.add_subcommand("robustness", "steering robustness");
  robustness->add_option("--assemblage", asm_path)->required();
  robustness->add_flag("--channel-form", channel_form);
  robustness->add_option("--output", output);

  auto* weight = app.add_subcommand("weight", "steerable weight");
  weight->add_option("--assemblage", asm_path)->required();
  weight->add_flag("--channel-form", channel_form);
  weight->add_option("--output", output);

  auto* extq = app.add_subcommand("extension-quantifier", "quantifier of an extension");
  extq->add_option("--extension", ext_path)->required();
  extq->add_option("--povms", povm_path)->required();
  extq->add_option("--mode", mode, "choi|search")->check(CLI::IsMember({"choi", "search"}));
  extq->add_option("--measure", measure, "robustness|weight")
      ->check(CLI::IsMember({"robustness", "weight"}));
  extq->add_option("--output", output);

  auto* thm1 = app.add_subcommand("verify-theorem1", "two-route steerability cross-check");
  thm1->add_option("--extension", ext_path)->required();
  thm1->add_option("--povms", povm_path)->required();
  thm1->add_option("--output", output);

  auto* comp = app.add_subcommand("complementary", "complementary channel");
  comp->add_option("--extension", ext_path)->required();
  comp->add_flag("--eb-check", eb, "run the PPT entanglement-breaking check");
  comp->add_option("--output", output);

  std::string scenario;
  auto* demo = app.add_subcommand("demo", "built-in example scenarios, self-contained");
  demo->add_option("scenario", scenario, "fixed-output|extremal-kraus|pointer|dephasing-dilation")
      ->required()
      ->check(CLI::IsMember({"fixed-output", "extremal-kraus", "pointer", "dephasing-dilation"}));
  demo->add_option("--seed", seed);
  demo->add_option("--output", output);

  auto* tomo = app.add_subcommand("tomography", "simulated subchannel tomography");
  tomo->add_option("--mode", mode, "ancilla|products")
      ->check(CLI::IsMember({"ancilla", "products", "choi", "search"}));
  tomo->add_option("--extension", ext_path)->required();
  tomo->add_option("--povms", povm_path)->required();
  tomo->add_option("--output", output);

  std::string param = "gamma", range = "0:1:11";
  auto* sweep = app.add_subcommand("sweep", "quantifier vs parameter, CSV");
  sweep->add_option("--param", param, "parameter name (gamma)");
  sweep->add_option("--range", range, "a:b:n inclusive sweep range");
  sweep->add_option("--measure", measure, "robustness|weight")
      ->check(CLI::IsMember({"robustness", "weight"}));
  sweep->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
  sdp::solver_tolerance() = tol;

  if (convert->parsed()) {
    json j = load_payload(input);
    Channel c = [&] {
      if (from == "kraus") return choi_from_kraus(kraus_from_json(j));
      if (from == "stinespring")
        return marginal(extension_from_isometry(stinespring_from_json(j)), Receiver::B);
      return channel_from_json(j);
    }();
    json doc = result_doc("convert");
    if (to == "kraus")
      doc["result"] = kraus_to_json(kraus_from_choi(c));
    else if (to == "stinespring")
      doc["result"] = stinespring_to_json(stinespring_from_kraus(kraus_from_choi(c)));
    else
      doc["result"] = channel_to_json(c);
    emit(doc, output);
    return 0;
  }

  if (assemblage->parsed()) {
    ChannelExtension e = extension_from_json(load_payload(ext_path));
    MeasurementAssemblage ma = measurement_assemblage_from_json(load_payload(povm_path));
    json doc = result_doc("assemblage");
    doc["result"] = channel_assemblage_to_json(induced_channel_assemblage(e, ma));
    emit(doc, output);
    return 0;
  }

  if (certify->parsed() || robustness->parsed() || weight->parsed()) {
    StateAssemblage sa = load_assemblage(asm_path, channel_form);
    json doc;
    if (certify->parsed()) {
      doc = result_doc("certify");
      doc["result"] = verdict_to_json(test_unsteerable(sa));
    } else if (robustness->parsed()) {
      doc = result_doc("robustness");
      doc["result"] = verdict_to_json(steering_robustness(sa));
    } else {
      doc = result_doc("weight");
      doc["result"] = verdict_to_json(steerable_weight(sa));
    }
    emit(doc, output);
    return 0;
  }

  if (extq->parsed()) {
    ChannelExtension e = extension_from_json(load_payload(ext_path));
    MeasurementAssemblage ma = measurement_assemblage_from_json(load_payload(povm_path));
    Quantifier q = (measure == "weight") ? Quantifier::Weight : Quantifier::Robustness;
    InputMode im = (mode == "search") ? InputMode::Search : InputMode::Choi;
    json doc = result_doc("extension-quantifier");
    doc["result"] = json{{"measure", measure}, {"mode", mode},
                         {"value", channel_quantifier(e, ma, q, im)}};
    emit(doc, output);
    return 0;
  }

  if (thm1->parsed()) {
    ChannelExtension e = extension_from_json(load_payload(ext_path));
    MeasurementAssemblage ma = measurement_assemblage_from_json(load_payload(povm_path));
    Theorem1Report rep = verify_theorem1(e, ma);
    json doc = result_doc("verify-theorem1");
    doc["result"] = json{{"agree", rep.agree},
                         {"sr_channel", rep.sr_channel},
                         {"sr_state", rep.sr_state},
                         {"via_channel_assemblage", verdict_to_json(rep.via_channel_assemblage)},
                         {"via_choi_state", verdict_to_json(rep.via_choi_state)}};
    emit(doc, output);
    return 0;
  }

  if (comp->parsed()) {
    ChannelExtension e = extension_from_json(load_payload(ext_path));
    Channel c = complementary(e);
    json doc = result_doc("complementary");
    doc["result"] = channel_to_json(c);
    if (eb) {
      EbStatus s = eb_check(c);
      doc["eb_check"] = (s == EbStatus::EbCertified)  ? "eb-certified"
                        : (s == EbStatus::NotEb)      ? "not-eb"
                                                      : "inconclusive";
    }
    emit(doc, output);
    return 0;
  }

  if (demo->parsed()) {
    json doc = result_doc("demo");
    doc["scenario"] = scenario;
    doc["seed"] = seed;
    if (scenario == "pointer") {
      Instrument inst = random_instrument(2, 2, 2, seed);
      ChannelExtension e = pointer_extension(inst);
      StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(e, xz_measurements()));
      SteeringVerdict v = test_unsteerable(sa);
      double sr = steering_robustness(sa).value;
      doc["result"] = json{{"verdict", verdict_to_json(v)}, {"sr", sr}};
    } else if (scenario == "dephasing-dilation") {
      ChannelExtension e = extension_from_isometry(stinespring_from_kraus(dephasing_kraus()));
      StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(e, xz_measurements()));
      SteeringVerdict v = steering_robustness(sa);
      doc["result"] = json{{"verdict", verdict_to_json(v)}, {"sr", v.value}};
    } else if (scenario == "fixed-output") {
      Operator sigma = random_density(2, seed);
      ChannelExtension e = fixed_output_extension(sigma, 2);
      Channel compl_ch = complementary(e);
      double id_dist = fdist(compl_ch.choi, max_entangled(2));
      // every product input produces an A:B product output
      double product_dev = 0.0;
      Channel as_channel = make_channel(e.choi, 2, DimSpec{2, 2});
      for (std::uint64_t s = 1; s <= 5; ++s) {
        Operator rho = random_density(2, seed + 11 * s);
        Operator out = chansteer::apply(as_channel, rho);
        Operator a_part = partial_trace(out, DimSpec{2, 2}, {0});
        product_dev = std::max(product_dev, fdist(out, kron(a_part, sigma)));
      }
      StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(e, xz_measurements()));
      SteeringVerdict v = test_unsteerable(sa);
      Theorem2Report t2 = theorem2_necessary_check(e);
      doc["result"] = json{{"complementary_identity_distance", id_dist},
                           {"max_product_output_deviation", product_dev},
                           {"choi_verdict", verdict_to_json(v)},
                           {"ppt", t2.ppt},
                           {"min_pt_eigenvalue", t2.min_pt_eigenvalue}};
    } else { // extremal-kraus
      Channel c = random_channel(2, 2, 2, seed);
      KrausSet ks = kraus_from_choi(c);
      // generic 2-Kraus channels are extremal: {K_i^dagger K_j} independent
      Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic> gram(ks.ops.size() * ks.ops.size(), 4);
      int row = 0;
      for (const auto& ki : ks.ops)
        for (const auto& kj : ks.ops) {
          Operator prod = ki.adjoint() * kj;
          for (int t = 0; t < 4; ++t) gram(row, t) = prod(t / 2, t % 2);
          ++row;
        }
      Eigen::ColPivHouseholderQR<decltype(gram)> qr(gram);
      qr.setThreshold(1e-9);
      bool extremal = qr.rank() == row;
      ChannelExtension incoherent = kraus_pointer_extension(ks);
      ChannelExtension dilation = extension_from_isometry(stinespring_from_kraus(ks));
      MeasurementAssemblage ma = random_measurements(2, 2, 2, seed + 1);
      SteeringVerdict pointer_v =
          test_unsteerable(choi_state_assemblage(induced_channel_assemblage(incoherent, ma)));
      Theorem2Report t2 = theorem2_necessary_check(dilation);
      doc["result"] = json{{"kraus_products_independent", extremal},
                           {"pointer_verdict", verdict_to_json(pointer_v)},
                           {"dilation_ppt", t2.ppt},
                           {"dilation_min_pt_eigenvalue", t2.min_pt_eigenvalue}};
    }
    emit(doc, output);
    return 0;
  }

  if (tomo->parsed()) {
    ChannelExtension e = extension_from_json(load_payload(ext_path));
    MeasurementAssemblage ma = measurement_assemblage_from_json(load_payload(povm_path));
    BlackBox bb = black_box_from_extension(e, ma);
    ChannelAssemblage ca = (mode == "products")
                               ? reconstruct_products(bb, default_probes(e.d_C), ma.settings(),
                                                      ma.outcomes())
                               : reconstruct_ancilla(bb, ma.settings(), ma.outcomes());
    ChannelAssemblage direct = induced_channel_assemblage(e, ma);
    double err = 0.0;
    for (size_t x = 0; x < ca.members.size(); ++x)
      for (size_t a = 0; a < ca.members[x].size(); ++a)
        err = std::max(err, fdist(ca.members[x][a].choi, direct.members[x][a].choi));
    json doc = result_doc("tomography");
    doc["mode"] = (mode == "products") ? "products" : "ancilla";
    doc["reconstruction_error"] = err;
    doc["result"] = channel_assemblage_to_json(ca);
    emit(doc, output);
    return 0;
  }

  if (sweep->parsed()) {
    if (param != "gamma") throw std::invalid_argument("sweep: unknown parameter " + param);
    double a = 0, b = 1;
    int n = 0;
    {
      std::istringstream ss(range);
      char c1 = 0, c2 = 0;
      if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2)
        throw std::invalid_argument("sweep: --range must be a:b:n with n >= 2");
    }
    std::ostringstream csv;
    csv << "parameter,value,status,gap,iterations\n";
    for (int i = 0; i < n; ++i) {
      double gamma = a + (b - a) * i / (n - 1);
      SteeringVerdict v;
      quantify(werner_xz(gamma), measure, &v);
      csv << gamma << "," << v.value << "," << v.diagnostics.status << "," << v.diagnostics.gap
          << "," << v.diagnostics.iterations << "\n";
    }
    if (output.empty())
      std::cout << csv.str();
    else {
      std::ofstream out(output);
      if (!out) throw std::invalid_argument("sweep: cannot write " + output);
      out << csv.str();
    }
    return 0;
  }

  return 1;
}

} // namespace

int main(int argc, char** argv) {
  std::string verb = (argc > 1) ? argv[1] : "";
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& ex) {
    json doc{{"tool", "chansteer"}, {"version", kToolVersion}, {"command", verb},
             {"status", "validation-error"}, {"error", ex.what()}};
    std::cout << doc.dump(2) << "\n";
    return 2;
  } catch (const std::exception& ex) {
    json doc{{"tool", "chansteer"}, {"version", kToolVersion}, {"command", verb},
             {"status", "solver-failure"}, {"error", ex.what()}};
    std::cout << doc.dump(2) << "\n";
    return 3;
  }
}
