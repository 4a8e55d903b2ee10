#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

#include "charnum/engine.hpp"
#include "charnum/errors.hpp"
#include "charnum/table.hpp"

namespace py = pybind11;
using namespace charnum;

namespace {

// Engines keep their memo tables between calls; one per ambient dimension.
Engine& engine_for(int r) {
  static std::map<int, std::unique_ptr<Engine>> engines;
  auto& slot = engines[r];
  if (!slot) slot = std::make_unique<Engine>(r);
  return *slot;
}

Constraint to_constraint(int r, int tangents, const std::vector<int>& incidences) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  if (static_cast<int>(incidences.size()) > r)
    throw Error(ErrorCode::InvalidArgument, "more incidence counts than codimensions 1..r");
  auto c = Constraint::empty(r);
  c.tangencies = tangents;
  for (std::size_t k = 0; k < incidences.size(); ++k) c.add(static_cast<int>(k) + 1, incidences[k]);
  return c;
}

// Values cross the boundary as "p/q" strings; the Python layer makes Fractions.
std::string str(const Rational& q) { return q.get_str(); }

std::vector<int> row_tuple(const Constraint& c) {
  std::vector<int> t{c.tangencies};
  for (int k = 2; k <= c.r; ++k) t.push_back(c.count(k));
  return t;
}

py::list checks(const std::vector<CheckResult>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(py::make_tuple(r.instance, r.pass, r.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(_charnum, m) {
  m.doc() = "Exact characteristic numbers of elliptic and rational curves in P^r";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "CharnumError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& cls = error_type.get_stored();
      py::object inst = cls(std::string(error_name(e.code())) + ": " + e.what());
      inst.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(cls.ptr(), inst.ptr());
    }
  });

  m.def(
      "elliptic",
      [](int r, int d, int tangents, const std::vector<int>& incidences) {
        return str(engine_for(r).elliptic_characteristic(d, to_constraint(r, tangents, incidences)));
      },
      py::arg("r"), py::arg("d"), py::arg("tangents") = 0, py::arg("incidences") = std::vector<int>{});

  m.def(
      "rational",
      [](int r, int d, int tangents, const std::vector<int>& incidences) {
        return str(engine_for(r).rational_characteristic(d, to_constraint(r, tangents, incidences)));
      },
      py::arg("r"), py::arg("d"), py::arg("tangents") = 0, py::arg("incidences") = std::vector<int>{});

  m.def(
      "stack_count",
      [](const std::string& kind, int r, int d, int tangents, const std::vector<int>& incidences, int node) {
        return str(engine_for(r).count(parse_stack(kind), d, to_constraint(r, tangents, incidences), node));
      },
      py::arg("kind"), py::arg("r"), py::arg("d"), py::arg("tangents") = 0,
      py::arg("incidences") = std::vector<int>{}, py::arg("node") = 0);

  m.def(
      "table",
      [](int r, int d, int jobs, bool incidence_only) {
        std::vector<TableRow> rows;
        {
          py::gil_scoped_release release;
          rows = compute_table(r, d, balanced_rows(r, d, incidence_only), nullptr, jobs);
        }
        py::list out;
        for (const auto& row : rows) out.append(py::make_tuple(row_tuple(row.constraint), str(row.value)));
        return out;
      },
      py::arg("r"), py::arg("d"), py::arg("jobs") = 1, py::arg("incidence_only") = false);

  m.def(
      "audit",
      [](int r, int d, const std::vector<int>& incidences, int pivot) {
        auto a = engine_for(r).audit_getzler(d, to_constraint(r, 0, incidences), pivot);
        py::list terms;
        for (const auto& t : a.terms)
          terms.append(py::dict(py::arg("term") = t.term, py::arg("stratum") = stratum_name(t.stratum),
                                py::arg("prefactor") = t.prefactor, py::arg("degrees") = t.degrees,
                                py::arg("distribution") = t.distribution, py::arg("value") = str(t.value)));
        return py::dict(py::arg("pivot") = a.pivot, py::arg("lhs") = str(a.lhs),
                        py::arg("balance") = str(a.balance()), py::arg("balance_line") = a.balance_line(),
                        py::arg("ledger") = a.ledger(), py::arg("terms") = terms);
      },
      py::arg("r"), py::arg("d"), py::arg("incidences"), py::arg("pivot"));

  m.def(
      "verify",
      [](const std::string& name, int r, int d_min, int d_max) {
        if (name != "pivot-invariance" && name != "lemma51")
          throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
        std::vector<CheckResult> rs;
        {
          py::gil_scoped_release release;
          if (name == "pivot-invariance") {
            rs = verify_pivot_invariance(r, d_min, d_max);
          } else {
            for (int d = d_min; d <= d_max; ++d) {
              auto part = verify_lemma51(r, d);
              rs.insert(rs.end(), part.begin(), part.end());
            }
          }
        }
        return checks(rs);
      },
      py::arg("name"), py::arg("r"), py::arg("d_min"), py::arg("d_max"));
}
