#include "chansteer/json_io.hpp"

#include <fstream>

namespace chansteer {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

void require_type(const json& j, const std::string& type) {
  if (!j.is_object() || j.value("type", "") != type)
    bad("expected an object with type \"" + type + "\"");
}

std::vector<int> dims_from_json(const json& j) {
  std::vector<int> out;
  for (const auto& d : j) out.push_back(d.get<int>());
  return out;
}

json dims_to_json(const DimSpec& d) {
  json out = json::array();
  for (int x : d.dims()) out.push_back(x);
  return out;
}

} // namespace

json operator_to_json(const Operator& m) {
  json data = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Operator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    bad("operator requires rows, cols, data");
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (rows < 1 || cols < 1 || static_cast<int>(data.size()) != rows * cols)
    bad("operator data length must equal rows*cols");
  std::vector<cxd> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2) bad("operator entries must be [re, im] pairs");
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return make_operator(rows, cols, entries);
}

json channel_to_json(const Channel& c) {
  return json{{"type", "channel"},
              {"d_in", c.d_in},
              {"d_out", dims_to_json(c.d_out)},
              {"choi", operator_to_json(c.choi)}};
}

Channel channel_from_json(const json& j) {
  require_type(j, "channel");
  return make_channel(operator_from_json(j.at("choi")), j.at("d_in").get<int>(),
                      DimSpec{dims_from_json(j.at("d_out"))});
}

json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& op : k.ops) ops.push_back(operator_to_json(op));
  return json{{"type", "kraus"}, {"d_in", k.d_in}, {"d_out", k.d_out}, {"ops", std::move(ops)}};
}

KrausSet kraus_from_json(const json& j) {
  require_type(j, "kraus");
  KrausSet k;
  k.d_in = j.at("d_in").get<int>();
  k.d_out = j.at("d_out").get<int>();
  for (const auto& op : j.at("ops")) {
    Operator m = operator_from_json(op);
    if (m.rows() != k.d_out || m.cols() != k.d_in)
      bad("kraus operator shape must be d_out x d_in");
    k.ops.push_back(std::move(m));
  }
  if (k.ops.empty()) bad("kraus set must be non-empty");
  return k;
}

json stinespring_to_json(const StinespringIsometry& v) {
  return json{{"type", "stinespring"},
              {"d_C", v.d_C},
              {"d_A", v.d_A},
              {"d_B", v.d_B},
              {"V", operator_to_json(v.V)}};
}

StinespringIsometry stinespring_from_json(const json& j) {
  require_type(j, "stinespring");
  StinespringIsometry v;
  v.d_C = j.at("d_C").get<int>();
  v.d_A = j.at("d_A").get<int>();
  v.d_B = j.at("d_B").get<int>();
  v.V = operator_from_json(j.at("V"));
  if (v.V.rows() != v.d_A * v.d_B || v.V.cols() != v.d_C)
    bad("stinespring isometry shape must be (d_A*d_B) x d_C");
  if ((v.V.adjoint() * v.V - identity(v.d_C)).norm() > 1e-9)
    bad("stinespring V is not an isometry within 1e-9");
  return v;
}

json subchannel_to_json(const Subchannel& s) {
  return json{{"type", "subchannel"},
              {"d_in", s.d_in},
              {"d_out", dims_to_json(s.d_out)},
              {"choi", operator_to_json(s.choi)}};
}

Subchannel subchannel_from_json(const json& j) {
  require_type(j, "subchannel");
  return make_subchannel(operator_from_json(j.at("choi")), j.at("d_in").get<int>(),
                         DimSpec{dims_from_json(j.at("d_out"))});
}

json instrument_to_json(const Instrument& inst) {
  json members = json::array();
  for (const auto& m : inst.members) members.push_back(subchannel_to_json(m));
  return json{{"type", "instrument"}, {"members", std::move(members)}};
}

Instrument instrument_from_json(const json& j) {
  require_type(j, "instrument");
  std::vector<Subchannel> members;
  for (const auto& m : j.at("members")) members.push_back(subchannel_from_json(m));
  return make_instrument(std::move(members));
}

json extension_to_json(const ChannelExtension& e) {
  return json{{"type", "extension"},
              {"d_C", e.d_C},
              {"d_A", e.d_A},
              {"d_B", e.d_B},
              {"choi", operator_to_json(e.choi)}};
}

ChannelExtension extension_from_json(const json& j) {
  require_type(j, "extension");
  return make_extension(operator_from_json(j.at("choi")), j.at("d_C").get<int>(),
                        j.at("d_A").get<int>(), j.at("d_B").get<int>());
}

json measurement_assemblage_to_json(const MeasurementAssemblage& ma) {
  json povms = json::array();
  for (const auto& setting : ma.povms) {
    json row = json::array();
    for (const auto& effect : setting) row.push_back(operator_to_json(effect));
    povms.push_back(std::move(row));
  }
  return json{{"type", "measurement_assemblage"}, {"povms", std::move(povms)}};
}

MeasurementAssemblage measurement_assemblage_from_json(const json& j) {
  require_type(j, "measurement_assemblage");
  std::vector<std::vector<Operator>> povms;
  for (const auto& setting : j.at("povms")) {
    std::vector<Operator> row;
    for (const auto& effect : setting) row.push_back(operator_from_json(effect));
    povms.push_back(std::move(row));
  }
  return make_measurement_assemblage(std::move(povms));
}

json state_assemblage_to_json(const StateAssemblage& sa) {
  json members = json::array();
  for (const auto& setting : sa.members) {
    json row = json::array();
    for (const auto& m : setting) row.push_back(operator_to_json(m));
    members.push_back(std::move(row));
  }
  return json{{"type", "state_assemblage"}, {"members", std::move(members)}};
}

StateAssemblage state_assemblage_from_json(const json& j) {
  require_type(j, "state_assemblage");
  std::vector<std::vector<Operator>> members;
  for (const auto& setting : j.at("members")) {
    std::vector<Operator> row;
    for (const auto& m : setting) row.push_back(operator_from_json(m));
    members.push_back(std::move(row));
  }
  return make_state_assemblage(std::move(members));
}

json channel_assemblage_to_json(const ChannelAssemblage& ca) {
  json members = json::array();
  for (const auto& setting : ca.members) {
    json row = json::array();
    for (const auto& m : setting) row.push_back(subchannel_to_json(m));
    members.push_back(std::move(row));
  }
  return json{{"type", "channel_assemblage"}, {"members", std::move(members)}};
}

ChannelAssemblage channel_assemblage_from_json(const json& j) {
  require_type(j, "channel_assemblage");
  std::vector<std::vector<Subchannel>> members;
  for (const auto& setting : j.at("members")) {
    std::vector<Subchannel> row;
    for (const auto& m : setting) row.push_back(subchannel_from_json(m));
    members.push_back(std::move(row));
  }
  return make_channel_assemblage(std::move(members));
}

json verdict_to_json(const SteeringVerdict& v) {
  json out{{"type", "verdict"},
           {"steerable", v.steerable},
           {"value", v.value},
           {"boundary", v.boundary},
           {"diagnostics",
            json{{"status", v.diagnostics.status},
                 {"gap", v.diagnostics.gap},
                 {"primal_residual", v.diagnostics.primal_residual},
                 {"dual_residual", v.diagnostics.dual_residual},
                 {"iterations", v.diagnostics.iterations}}}};
  if (!v.model.empty()) {
    json model = json::array();
    for (const auto& x : v.model) model.push_back(operator_to_json(x));
    out["model"] = std::move(model);
  }
  if (!v.witness.empty()) {
    json witness = json::array();
    for (const auto& setting : v.witness) {
      json row = json::array();
      for (const auto& w : setting) row.push_back(operator_to_json(w));
      witness.push_back(std::move(row));
    }
    out["witness"] = std::move(witness);
  }
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    bad("parse failure in " + path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << j.dump(2) << "\n";
}

} // namespace chansteer
