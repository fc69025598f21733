#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistkit/cli.hpp"
#include "twistkit/delta.hpp"
#include "twistkit/gns.hpp"
#include "twistkit/parse.hpp"
#include "twistkit/prism.hpp"
#include "twistkit/tambara.hpp"
#include "twistkit/witt.hpp"

namespace py = pybind11;
using namespace twistkit;

namespace {

Int to_int(const std::string& s) { return Int(s); }

std::vector<Elem> z_coords(const std::vector<std::string>& cs) {
  auto Z = ZRing::integers();
  std::vector<Elem> out;
  for (auto& c : cs) out.push_back(Z->make(to_int(c)));
  return out;
}

std::vector<std::string> strs(const std::vector<Elem>& es) {
  std::vector<std::string> out;
  for (auto& e : es) out.push_back(e.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact Witt-vector / prism-tower / q-series calculus";
  m.attr("__version__") = "0.1.0";

  m.def("mobius", &mobius, py::arg("n"));

  m.def(
      "ghost",
      [](long p, const std::vector<std::string>& coords) {
        auto Z = ZRing::integers();
        auto W = witt::WittRing::create(
            Z, witt::TruncSet::p_typ(p, static_cast<long>(coords.size()) - 1));
        return strs(witt::ghost(W->make(z_coords(coords))));
      },
      py::arg("p"), py::arg("coords"));

  m.def(
      "from_ghost",
      [](long p, const std::vector<std::string>& ghost) {
        auto Z = ZRing::integers();
        auto W = witt::WittRing::create(
            Z, witt::TruncSet::p_typ(p, static_cast<long>(ghost.size()) - 1));
        auto& WR = static_cast<const witt::WittRing&>(*W);
        return strs(WR.coords(witt::from_ghost_elem(W, z_coords(ghost))));
      },
      py::arg("p"), py::arg("ghost"));

  m.def(
      "witt_add",
      [](long p, const std::vector<std::string>& a,
         const std::vector<std::string>& b) {
        auto Z = ZRing::integers();
        auto W = witt::WittRing::create(
            Z, witt::TruncSet::p_typ(p, static_cast<long>(a.size()) - 1));
        auto& WR = static_cast<const witt::WittRing&>(*W);
        Elem r = W->make(z_coords(a)) + W->make(z_coords(b));
        return strs(WR.coords(r));
      },
      py::arg("p"), py::arg("a"), py::arg("b"));

  m.def(
      "witt_mul",
      [](long p, const std::vector<std::string>& a,
         const std::vector<std::string>& b) {
        auto Z = ZRing::integers();
        auto W = witt::WittRing::create(
            Z, witt::TruncSet::p_typ(p, static_cast<long>(a.size()) - 1));
        auto& WR = static_cast<const witt::WittRing&>(*W);
        Elem r = W->make(z_coords(a)) * W->make(z_coords(b));
        return strs(WR.coords(r));
      },
      py::arg("p"), py::arg("a"), py::arg("b"));

  m.def(
      "delta_n",
      [](long p, const std::string& x, long n) {
        auto Z = ZRing::integers();
        delta::DeltaRing R(Z, p, [](const Elem& e) { return e; });
        return delta::delta_n(R, Z->make(to_int(x)), n).str();
      },
      py::arg("p"), py::arg("x"), py::arg("n"));

  m.def(
      "theta_n",
      [](long p, const std::string& x, long n) {
        auto Z = ZRing::integers();
        delta::DeltaRing R(Z, p, [](const Elem& e) { return e; });
        return delta::theta_n(R, Z->make(to_int(x)), n).str();
      },
      py::arg("p"), py::arg("x"), py::arg("n"));

  m.def(
      "vartheta",
      [](long d, const std::string& x) {
        auto Z = ZRing::integers();
        delta::LambdaContext L(Z, [](const Elem& e, long) { return e; });
        return delta::vartheta(L, Z->make(to_int(x)), d).str();
      },
      py::arg("d"), py::arg("x"));

  m.def(
      "sum_rule",
      [](long mm, long k) {
        return tambara::generate_sum_rule(mm, k).to_json().dump();
      },
      py::arg("m"), py::arg("k"));

  m.def(
      "transfer_rule",
      [](long mm, long n, long k) {
        return tambara::generate_transfer_rule(mm, n, k).to_json().dump();
      },
      py::arg("m"), py::arg("n"), py::arg("k"));

  m.def(
      "gaussian_binomial",
      [](long n, long k) {
        return gns::s_binomial(gns::Spec::multiplicative_reduced(), n, k).str();
      },
      py::arg("n"), py::arg("k"));

  m.def(
      "twisted_power",
      [](long n) {
        return gns::twisted_power(gns::Spec::multiplicative_reduced(), n).str();
      },
      py::arg("n"));

  m.def(
      "cyclotomic",
      [](long d) { return gns::Spec::multiplicative().phi_d(d).str(); },
      py::arg("d"));

  m.def(
      "q_analogue",
      [](long n) { return gns::Spec::multiplicative_reduced().s(n).str(); },
      py::arg("n"));

  m.def(
      "norm_lift",
      [](const std::string& f, long mm, long n) {
        return gns::norm_lift(gns::Spec::multiplicative(), parse_poly(f), mm, n)
            .str();
      },
      py::arg("f"), py::arg("m"), py::arg("n"));

  m.def(
      "prism_transversal",
      [](const std::string& model, long p, const std::string& x, long n) {
        prism::Presentation A = prism::Presentation::from_config(
            Json{{"model", model}, {"p", p}});
        Elem e = A.level_ring(0, n)->make(parse_poly(x));
        return strs(A.to_transversal(e, n));
      },
      py::arg("model"), py::arg("p"), py::arg("x"), py::arg("n"));

  m.def(
      "prism_norm",
      [](const std::string& model, long p, const std::string& x, long n) {
        prism::Presentation A = prism::Presentation::from_config(
            Json{{"model", model}, {"p", p}});
        Elem e = A.level_ring(0, n - 1)->make(parse_poly(x));
        return A.tamb_N(e, n).str();
      },
      py::arg("model"), py::arg("p"), py::arg("x"), py::arg("n"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::string out;
        int code = cli::run_cli(args, out);
        return py::make_tuple(code, out);
      },
      py::arg("args"));
}
