#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfv/cli.hpp"
#include "nfv/errors.hpp"
#include "nfv/fields.hpp"
#include "nfv/identities.hpp"
#include "nfv/kernels.hpp"
#include "nfv/numerics.hpp"
#include "nfv/report.hpp"

namespace py = pybind11;
using namespace nfv;

namespace {

using Pair = std::pair<std::string, std::string>;

Complex parse(const Pair& z, long bits) {
  WorkingPrecision wp(bits);
  return {Real(std::string_view(z.first)), Real(std::string_view(z.second))};
}

Pair render(const Complex& z, long bits) { return {decimal_string(z.re, bits), decimal_string(z.im, bits)}; }

PrecisionContext context(long bits) {
  auto ctx = PrecisionContext::with_precision(bits);
  ctx.validate();
  return ctx;
}

std::string report_json(const VerificationReport& r) { return format_reports(std::span(&r, 1), ReportFormat::Json); }

}  // namespace

PYBIND11_MODULE(_nfv, m) {
  m.doc() = "Arbitrary-precision divisor sums, kernels and summation identities over number fields";

  py::register_exception<Error>(m, "Error");

  m.def("field_info", [](long disc, long bits) {
    const auto f = field_from_discriminant(disc);
    py::dict d;
    d["label"] = f.label();
    d["degree"] = f.degree;
    d["r1"] = f.r1;
    d["r2"] = f.r2;
    d["discriminant"] = f.discriminant;
    d["H"] = decimal_string(f.residue_H(context(bits)), bits);
    return d;
  }, py::arg("disc"), py::arg("bits") = 256);

  m.def("ideal_counts", [](long disc, long max_norm) { return vk_table(field_from_discriminant(disc), max_norm).counts; },
        py::arg("disc"), py::arg("max_norm"));

  m.def("divisor_sigma", [](long disc, const Pair& a, long n, long bits) {
    return render(divisor_sigma(field_from_discriminant(disc), parse(a, bits), n, context(bits)), bits);
  }, py::arg("disc"), py::arg("a"), py::arg("n"), py::arg("bits") = 256);

  m.def("dedekind_zeta", [](long disc, const Pair& s, long bits) {
    return render(dedekind_zeta(field_from_discriminant(disc), parse(s, bits), context(bits)), bits);
  }, py::arg("disc"), py::arg("s"), py::arg("bits") = 256);

  m.def("kernel", [](long disc, const Pair& nu, const Pair& x, long bits) {
    return render(kernel_eval({field_from_discriminant(disc), parse(nu, bits)}, parse(x, bits), context(bits)), bits);
  }, py::arg("disc"), py::arg("nu"), py::arg("x"), py::arg("bits") = 256);

  m.def("lambert_lhs", [](long disc, const Pair& a, const Pair& y, long bits) {
    return render(lambert_lhs(field_from_discriminant(disc), parse(a, bits), parse(y, bits), context(bits)), bits);
  }, py::arg("disc"), py::arg("a"), py::arg("y"), py::arg("bits") = 256);

  m.def("verify_lambert", [](long disc, const Pair& a, const Pair& y, std::optional<long> continued, long bits) {
    const auto f = field_from_discriminant(disc);
    return report_json(verify_lambert(f, parse(a, bits), parse(y, bits), continued, context(bits)));
  }, py::arg("disc"), py::arg("a"), py::arg("y"), py::arg("continued") = py::none(), py::arg("bits") = 256);

  m.def("verify_koshliakov", [](long disc, const Pair& mu, const Pair& nu, const Pair& x, long bits) {
    const auto f = field_from_discriminant(disc);
    return report_json(verify_koshliakov(f, parse(mu, bits), parse(nu, bits), parse(x, bits), context(bits)));
  }, py::arg("disc"), py::arg("mu"), py::arg("nu"), py::arg("x"), py::arg("bits") = 256);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
