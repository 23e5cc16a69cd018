#include "chansteer/json_io.hpp"
#include "chansteer/tomography.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace chansteer;

namespace {

MeasurementAssemblage ma_from_lists(const std::vector<std::vector<Operator>>& povms) {
  return make_measurement_assemblage(povms);
}

StateAssemblage sa_from_lists(const std::vector<std::vector<Operator>>& members) {
  return make_state_assemblage(members);
}

py::dict verdict_dict(const SteeringVerdict& v) {
  py::dict d;
  d["steerable"] = v.steerable;
  d["value"] = v.value;
  d["boundary"] = v.boundary;
  d["model"] = v.model;
  d["witness"] = v.witness;
  py::dict diag;
  diag["status"] = v.diagnostics.status;
  diag["gap"] = v.diagnostics.gap;
  diag["primal_residual"] = v.diagnostics.primal_residual;
  diag["dual_residual"] = v.diagnostics.dual_residual;
  diag["iterations"] = v.diagnostics.iterations;
  d["diagnostics"] = diag;
  return d;
}

} // namespace

PYBIND11_MODULE(_chansteer, m) {
  m.doc() = "channel steering: extensions, assemblages, and steering quantifiers";

  py::class_<Channel>(m, "Channel")
      .def_readonly("choi", &Channel::choi)
      .def_readonly("d_in", &Channel::d_in)
      .def_property_readonly("d_out", [](const Channel& c) { return c.d_out.total(); });

  py::class_<ChannelExtension>(m, "ChannelExtension")
      .def_readonly("choi", &ChannelExtension::choi)
      .def_readonly("d_C", &ChannelExtension::d_C)
      .def_readonly("d_A", &ChannelExtension::d_A)
      .def_readonly("d_B", &ChannelExtension::d_B);

  py::class_<MeasurementAssemblage>(m, "MeasurementAssemblage")
      .def(py::init(&ma_from_lists), py::arg("povms"))
      .def_readonly("povms", &MeasurementAssemblage::povms);

  py::class_<StateAssemblage>(m, "StateAssemblage")
      .def(py::init(&sa_from_lists), py::arg("members"))
      .def_readonly("members", &StateAssemblage::members)
      .def_readonly("repaired", &StateAssemblage::repaired)
      .def("total", &StateAssemblage::total);

  m.def("make_channel",
        [](const Operator& choi, int d_in, int d_out) {
          return make_channel(choi, d_in, DimSpec{d_out});
        },
        py::arg("choi"), py::arg("d_in"), py::arg("d_out"));
  m.def("make_extension",
        [](const Operator& choi, int d_C, int d_A, int d_B) {
          return make_extension(choi, d_C, d_A, d_B);
        },
        py::arg("choi"), py::arg("d_C"), py::arg("d_A"), py::arg("d_B"));

  m.def("pointer_extension",
        [](const std::vector<Operator>& member_chois, int d_in, int d_out) {
          Instrument inst;
          for (const auto& c : member_chois)
            inst.members.push_back(Subchannel{c, d_in, DimSpec{d_out}});
          return pointer_extension(inst);
        },
        py::arg("member_chois"), py::arg("d_in"), py::arg("d_out"));
  m.def("random_extension", &random_extension, py::arg("d_C"), py::arg("d_A"), py::arg("d_B"),
        py::arg("seed"));
  m.def("fixed_output_extension", &fixed_output_extension, py::arg("sigma"), py::arg("d_C"));
  m.def("complementary", &complementary, py::arg("extension"));
  m.def("eb_check",
        [](const Channel& c) {
          switch (eb_check(c)) {
            case EbStatus::EbCertified: return "eb-certified";
            case EbStatus::NotEb: return "not-eb";
            default: return "inconclusive";
          }
        },
        py::arg("channel"));

  m.def("xz_measurements", &xz_measurements);
  m.def("random_measurements", &random_measurements, py::arg("dim"), py::arg("settings"),
        py::arg("outcomes"), py::arg("seed"));

  m.def("steered_assemblage", &steered_assemblage, py::arg("rho"), py::arg("d_A"), py::arg("ma"));
  m.def("choi_assemblage",
        [](const ChannelExtension& e, const MeasurementAssemblage& ma) {
          return choi_state_assemblage(induced_channel_assemblage(e, ma));
        },
        py::arg("extension"), py::arg("ma"));

  m.def("test_unsteerable", [](const StateAssemblage& sa) {
    return verdict_dict(test_unsteerable(sa));
  });
  m.def("steering_robustness", [](const StateAssemblage& sa) {
    return verdict_dict(steering_robustness(sa));
  });
  m.def("steerable_weight", [](const StateAssemblage& sa) {
    return verdict_dict(steerable_weight(sa));
  });

  m.def("verify_theorem1",
        [](const ChannelExtension& e, const MeasurementAssemblage& ma) {
          Theorem1Report r = verify_theorem1(e, ma);
          py::dict d;
          d["sr_channel"] = r.sr_channel;
          d["sr_state"] = r.sr_state;
          d["agree"] = r.agree;
          return d;
        },
        py::arg("extension"), py::arg("ma"));
  m.def("ppt_check",
        [](const ChannelExtension& e, bool claimed_incoherent) {
          Theorem2Report r = theorem2_necessary_check(e, claimed_incoherent);
          py::dict d;
          d["ppt"] = r.ppt;
          d["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
          d["consistent"] = r.consistent;
          return d;
        },
        py::arg("extension"), py::arg("claimed_incoherent") = false);

  m.def("reconstruct_ancilla",
        [](const ChannelExtension& e, const MeasurementAssemblage& ma) {
          BlackBox bb = black_box_from_extension(e, ma);
          ChannelAssemblage ca = reconstruct_ancilla(bb, ma.settings(),
                                                     static_cast<int>(ma.povms[0].size()));
          std::vector<std::vector<Operator>> chois;
          for (const auto& row : ca.members) {
            std::vector<Operator> r;
            for (const auto& sc : row) r.push_back(sc.choi);
            chois.push_back(std::move(r));
          }
          return chois;
        },
        py::arg("extension"), py::arg("ma"));

  m.attr("__version__") = kToolVersion;
}
