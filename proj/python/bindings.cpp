#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmray/limitformula.hpp"
#include "cmray/suites.hpp"

namespace py = pybind11;
using namespace cmray;

namespace {

std::string verify_suite(const std::string& suite, long dk, long N, long digits, long cutoff,
                         long max_n, unsigned long seed, int samples) {
    RunConfig cfg;
    cfg.dk = dk;
    cfg.N = N;
    cfg.digits = digits;
    cfg.cutoff = cutoff;
    cfg.max_n = max_n;
    cfg.seed = seed;
    cfg.samples = samples;
    SuiteReport rep;
    if (suite == "fricke-siegel") rep = suite_fricke_siegel(cfg);
    else if (suite == "kronecker") rep = suite_kronecker(cfg);
    else if (suite == "decomposition") rep = suite_decomposition(cfg);
    else if (suite == "case-constants") rep = suite_case_constants(cfg);
    else if (suite == "table1") rep = suite_table1(cfg);
    else if (suite == "main") rep = suite_main(cfg);
    else throw std::invalid_argument("unknown suite: " + suite);
    nlohmann::json out{{"suite", suite}, {"pass", rep.pass}, {"results", rep.results}};
    return out.dump();
}

std::pair<std::string, std::string> weber_value(long dk, long num, long den, long digits) {
    Field F = make_field(dk);
    PrecisionContext ctx(digits);
    Complex h = weber_h_torsion(F, TorsionVector(0, mpq_class(num, den)), ctx);
    return {h.re.str(digits), h.im.str(digits)};
}

std::pair<std::string, std::string> fricke_value(long dk, long r1n, long r1d, long r2n, long r2d,
                                                 long digits) {
    Field F = make_field(dk);
    PrecisionContext ctx(digits);
    Complex f = fricke(TorsionVector(mpq_class(r1n, r1d), mpq_class(r2n, r2d)),
                       F.tau(ctx.work_bits()), ctx);
    return {f.re.str(digits), f.im.str(digits)};
}

std::pair<std::string, std::string> xi_value(long dk, long N, long t, long digits) {
    Field F = make_field(dk);
    PrecisionContext ctx(digits);
    Complex x = xi_t(F, N, t, ctx);
    return {x.re.str(digits), x.im.str(digits)};
}

py::dict main_verdict(long dk, long N, long digits) {
    Field F = make_field(dk);
    PrecisionContext ctx(digits);
    MainVerdict v = verify_main(F, N, ctx);
    py::dict out;
    out["d_K"] = v.d;
    out["N"] = v.N.get_si();
    out["generator"] = v.generator_used;
    out["generated"] = v.generated;
    out["fixing_order"] = v.fixing_order.get_si();
    out["cl_order"] = v.cl_order.get_si();
    out["distinct_values"] = v.distinct_values;
    out["collapse"] = v.collapse;
    return out;
}

py::dict choose_t_py(long N) {
    TChoice c = choose_t(N);
    py::dict out;
    out["N"] = c.N.get_si();
    out["t"] = c.t.get_si();
    out["n_plus"] = c.n_plus.get_si();
    out["N_plus"] = c.N_plus.get_si();
    out["n_minus"] = c.n_minus.get_si();
    out["N_minus"] = c.N_minus.get_si();
    out["p_plus"] = c.p_plus.get_si();
    out["p_minus"] = c.p_minus.get_si();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "ray class groups and Weber/Fricke/Siegel CM values for imaginary quadratic fields";

    m.def("field_info_json", [](long dk) { return field_info_report(dk).dump(); }, py::arg("dk"));
    m.def(
        "rayclass_json",
        [](long dk, long N, bool check) { return rayclass_report(dk, N, check).dump(); },
        py::arg("dk"), py::arg("N"), py::arg("check") = false);
    m.def(
        "invariant_table_json",
        [](long dk, long N, long digits) {
            return invariant_table_json(dk, N, PrecisionContext(digits)).dump();
        },
        py::arg("dk"), py::arg("N"), py::arg("digits") = 100);
    m.def("verify_json", &verify_suite, py::arg("suite"), py::arg("dk") = -20, py::arg("N") = 5,
          py::arg("digits") = 100, py::arg("cutoff") = 1000000, py::arg("max_n") = 500,
          py::arg("seed") = 1, py::arg("samples") = 20);

    m.def(
        "kronecker_symbol",
        [](long d, long p) { return kronecker_symbol(mpz_class(d), mpz_class(p)); }, py::arg("d"),
        py::arg("p"));
    m.def("class_number", [](long d) { return class_number_by_forms(d); }, py::arg("d"));
    m.def(
        "ray_class_order",
        [](long dk, long N) {
            Field F = make_field(dk);
            return ray_class_group(F, Ideal::rational(F, N))->order().get_si();
        },
        py::arg("dk"), py::arg("N"));
    m.def(
        "degree_kn_over_h",
        [](long dk, long N) { return degree_KN_over_H(make_field(dk), N).get_si(); },
        py::arg("dk"), py::arg("N"));
    m.def(
        "degree_ring_over_h",
        [](long dk, long N) { return degree_ring_over_H(make_field(dk), N).get_si(); },
        py::arg("dk"), py::arg("N"));
    m.def(
        "collapses_to_half",
        [](long dk, long N) { return collapses_to_half(make_field(dk), N); }, py::arg("dk"),
        py::arg("N"));
    m.def("choose_t", &choose_t_py, py::arg("N"));
    m.def(
        "np_nm",
        [](long N, long t) {
            NpNm r = np_nm(N, t);
            return py::make_tuple(r.n_plus.get_si(), r.N_plus.get_si(), r.n_minus.get_si(),
                                  r.N_minus.get_si());
        },
        py::arg("N"), py::arg("t"));
    m.def("verify_main", &main_verdict, py::arg("dk"), py::arg("N"), py::arg("digits") = 200);
    m.def("weber_value", &weber_value, py::arg("dk"), py::arg("num"), py::arg("den"),
          py::arg("digits") = 100);
    m.def("fricke_value", &fricke_value, py::arg("dk"), py::arg("r1_num"), py::arg("r1_den"),
          py::arg("r2_num"), py::arg("r2_den"), py::arg("digits") = 100);
    m.def("xi_value", &xi_value, py::arg("dk"), py::arg("N"), py::arg("t"), py::arg("digits") = 100);
}
