#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <nilcone/svg.hpp>
#include <nilcone/verify.hpp>

using namespace nilcone;

namespace {

int cmd_verify(const std::string& case_name, const std::string& suite,
               const std::string& json_path, const VerifyOptions& opt) {
    Report rep = run_verification(case_name, suite, opt);
    std::cout << rep.to_text();
    if (!json_path.empty()) {
        std::ofstream os(json_path);
        if (!os) throw IoError("cannot open '" + json_path + "' for writing");
        os << rep.to_json().dump(2) << "\n";
    }
    return rep.exit_code();
}

int cmd_fan(const std::string& case_name, const std::string& side, int depth,
            const std::string& out, const VerifyOptions& opt) {
    MonodromyDataset ds = load_case(case_name, opt);
    std::string label = case_name + " " + (side == "a" ? "movable fan" : "quotient fan") +
                        ", depth " + std::to_string(depth);
    if (side == "a")
        emit_fan_svg(movable_chambers(ds, depth), out, label);
    else
        emit_fan_svg(quotient_fan(ds, depth, w2_basis(ds)), out, label);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_series(int degree) {
    PSeries w0 = w0_series(degree);
    std::cout << "holomorphic solution w0, coefficients of x^n y^m through total degree "
              << degree << ":\n";
    for (int d = 0; d <= degree; ++d)
        for (int n = d; n >= 0; --n) {
            Rat c = w0.coeff(n, d - n);
            std::cout << "  [" << n << "," << d - n << "] " << rat_str(c) << "\n";
        }
    return 0;
}

int cmd_transport(const std::string& case_name, const std::string& loop, int prec, double tol,
                  const VerifyOptions& opt) {
    MonodromyDataset ds = load_case(case_name, opt);
    if (!ds.raw.contains("transport"))
        throw UnknownCase("case '" + case_name + "' declares no differential operators");
    std::map<std::string, std::string> d1s, d2s;
    for (auto& [k, v] : ds.raw["series"]["operators"]["D1"].items()) d1s[k] = v.get<std::string>();
    for (auto& [k, v] : ds.raw["series"]["operators"]["D2"].items()) d2s[k] = v.get<std::string>();
    PfaffianSystem sys =
        build_pfaffian({parse_theta_operator(d1s), parse_theta_operator(d2s)}, 6, 4);
    auto run = [&](const std::string& name) {
        return loop_monodromy(sys, dataset_loop(ds, name, prec), prec);
    };
    if (loop == "rel") {
        std::map<std::string, CMat> loops;
        for (const char* nm : {"e1", "y0"}) loops[nm] = run(nm).first;
        NumericRelationReport nr =
            numeric_relation_check(loops, "e1-commute", "e1 * y0", "y0 * e1", prec, tol);
        std::cout << "relation TE1 Ty = Ty TE1: deviation " << nr.deviation << " (tol " << tol
                  << ") -> " << (nr.verdict ? "pass" : "fail") << "\n";
        return nr.verdict ? 0 : 1;
    }
    auto [m, inv] = run(loop);
    PrecisionContext pc(prec);
    std::cout << "loop " << loop << " at " << prec << " bits\n";
    std::cout << "  |det| = " << static_cast<double>(inv.det_modulus) << "\n";
    std::cout << "  char poly (monic, real/imag parts):\n";
    for (auto& c : inv.char_poly)
        std::cout << "    " << static_cast<double>(c.re) << " + " << static_cast<double>(c.im)
                  << " i\n";
    return static_cast<double>(abs(inv.det_modulus - 1)) < tol ? 0 : 1;
}

int cmd_lcsl(const std::string& case_name, const std::string& point, const VerifyOptions& opt) {
    MonodromyDataset ds = load_case(case_name, opt);
    for (const BoundaryPoint& pt : ds.points) {
        if (pt.name != point) continue;
        std::vector<RMat> gens;
        for (auto& g : pt.generators) gens.push_back(ds.mat(g));
        LCSLReport lr = lcsl_verify(gens, ds.weight_center);
        std::cout << "point " << point << ": dims (";
        for (size_t i = 0; i < lr.filtration_dims.size(); ++i)
            std::cout << (i ? "," : "") << lr.filtration_dims[i];
        std::cout << "), det m = " << rat_str(lr.m_det) << ", verdict "
                  << (lr.verdict ? "pass" : "fail") << "\n";
        return lr.verdict ? 0 : 1;
    }
    throw UnknownCase("case '" + case_name + "' has no boundary point '" + point + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilcone: exact monodromy-cone and movable-cone verification"};
    app.require_subcommand(1);
    VerifyOptions opt;

    std::string case_name, suite = "all", json_path, side = "b", loop = "x0", point, out;
    int depth = 3, degree = 8, prec = 256;
    double tol = 1e-10;

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--case", case_name, "dataset: p4p4, p3p3, k3")->required();
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--json", json_path, "write the report as JSON to this path");
    verify->add_option("--prec", prec, "transport precision in bits");
    verify->add_option("--tol", tol, "transport tolerance");

    CLI::App* fan = app.add_subcommand("fan", "emit a fan figure as SVG");
    fan->add_option("--case", case_name)->required();
    fan->add_option("--side", side, "a (movable fan) or b (quotient fan)")
        ->check(CLI::IsMember({"a", "b"}));
    fan->add_option("--depth", depth, "orbit depth");
    fan->add_option("--out", out, "output SVG path")->required();

    CLI::App* series = app.add_subcommand("series", "print the holomorphic period series");
    series->add_option("--degree", degree, "truncation degree");

    CLI::App* transport = app.add_subcommand("transport", "numeric monodromy of one loop");
    transport->add_option("--case", case_name)->required();
    transport->add_option("--loop", loop, "x0, y0, e1, or rel")
        ->check(CLI::IsMember({"x0", "y0", "e1", "rel"}));
    transport->add_option("--prec", prec, "working precision in bits");
    transport->add_option("--tol", tol, "verdict tolerance");

    CLI::App* lcsl = app.add_subcommand("lcsl", "check one boundary point");
    lcsl->add_option("--case", case_name)->required();
    lcsl->add_option("--point", point, "boundary point name")->required();

    try {
        app.parse(argc, argv);
        opt.prec_bits = prec;
        opt.tol = tol;
        if (verify->parsed()) return cmd_verify(case_name, suite, json_path, opt);
        if (fan->parsed()) return cmd_fan(case_name, side, depth, out, opt);
        if (series->parsed()) return cmd_series(degree);
        if (transport->parsed()) return cmd_transport(case_name, loop, prec, tol, opt);
        if (lcsl->parsed()) return cmd_lcsl(case_name, point, opt);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
