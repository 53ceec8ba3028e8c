#include <g2zeta/acceptance.hpp>
#include <g2zeta/json_io.hpp>
#include <g2zeta/oracle.hpp>
#include <g2zeta/polylog.hpp>
#include <g2zeta/reduce.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace g2zeta;

namespace {

std::string real_str(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

std::string complex_str(const Complex& z, int digits) {
    if (z.im == 0) return real_str(z.re, digits);
    return real_str(z.re, digits) + (z.im < 0 ? " - " : " + ") +
           real_str(fabs(z.im), digits) + "i";
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

std::string describe(const Classification& c) {
    if (!c.convergent) return "divergent (" + c.divergence_reason + ")";
    if (c.shape == ConvergenceShape::SingleForm)
        return "convergent, single form " + c.single_form.str();
    return "convergent, regular";
}

std::string certificate_text(const Certificate& cert) {
    std::ostringstream os;
    os << "input: " << cert.input.str() << "\n"
       << "classification: " << describe(cert.classification) << "\n"
       << "weight: " << cert.input.weight() << "\n"
       << "terms: " << cert.result.size() << "\n";
    for (auto& [t, c] : cert.result.terms()) os << "  " << c << " * " << t.str() << "\n";
    os << "trace:\n";
    for (const TraceStep& st : cert.trace) {
        os << "  " << st.rule << " on {" << st.pair_x.str() << ", " << st.pair_y.str()
           << "} -> " << st.sum_form.str() << " scale [";
        for (size_t i = 0; i < st.scale.size(); ++i)
            os << (i ? ", " : "") << rational_to_string(st.scale[i]);
        os << "]\n";
    }
    os << "all_rational: " << (cert.all_rational ? "true" : "false") << "\n";
    return os.str();
}

struct TupleArgs {
    std::vector<int> s;
    InputTuple tuple() const {
        InputTuple t;
        for (int i = 0; i < 6; ++i) t.s[i] = s[i];
        return t;
    }
};

void add_tuple_option(CLI::App* cmd, TupleArgs& args) {
    cmd->add_option("exponents", args.s, "the six exponents s1..s6")
        ->expected(6)
        ->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"special values of the double sum over the six forms "
                 "m, n, m+n, m+2n, m+3n, 2m+3n"};
    app.require_subcommand(1);

    int digits = 40;
    app.add_option("--digits", digits, "decimal digits of working precision")
        ->capture_default_str();

    TupleArgs targs;
    bool as_json = false;
    std::string out_path;
    long cutoff = 400;
    int levels = 3;
    int max_weight = 5;
    std::string item;
    int witten_s = 0;

    CLI::App* c_classify = app.add_subcommand("classify", "convergence classification");
    add_tuple_option(c_classify, targs);

    CLI::App* c_reduce = app.add_subcommand("reduce", "exact reduction certificate");
    add_tuple_option(c_reduce, targs);
    c_reduce->add_flag("--json", as_json, "emit the certificate as JSON");
    c_reduce->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* c_eval = app.add_subcommand("eval", "reduce and evaluate numerically");
    add_tuple_option(c_eval, targs);

    CLI::App* c_oracle = app.add_subcommand("oracle", "truncated double sum with extrapolation");
    add_tuple_option(c_oracle, targs);
    c_oracle->add_option("--m", cutoff, "base cutoff")->capture_default_str();
    c_oracle->add_option("--levels", levels, "extrapolation depth (0 = plain sum)")
        ->capture_default_str();

    CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance checks");
    c_verify->add_option("--item", item, "run a single check by id");

    CLI::App* c_tab = app.add_subcommand("tabulate", "CSV of all convergent tuples up to a weight");
    c_tab->add_option("--max-weight", max_weight, "largest total weight")
        ->capture_default_str();
    c_tab->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* c_witten = app.add_subcommand(
        "witten", "uniform-exponent value normalized by the group factor 120^s");
    c_witten->add_option("s", witten_s, "common exponent")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        PrecisionContext ctx(digits);

        if (c_classify->parsed()) {
            InputTuple t = targs.tuple();
            Classification c = classify(t);
            std::cout << t.str() << ": " << describe(c) << "\n";
            return c.convergent ? 0 : 2;
        }

        if (c_reduce->parsed()) {
            Certificate cert = reduce(targs.tuple());
            if (!cert.all_rational)
                std::cerr << "note: some coefficients leave the rationals\n";
            write_output(as_json ? to_json(cert).dump(2) + "\n" : certificate_text(cert),
                         out_path);
            return 0;
        }

        if (c_eval->parsed()) {
            Certificate cert = reduce(targs.tuple());
            EvalResult v = evaluate(cert.result, ctx);
            ctx.activate();
            std::cout << complex_str(v.value, digits) << "\n"
                      << "error bound: " << real_str(v.error_bound, 3) << "\n";
            return 0;
        }

        if (c_oracle->parsed()) {
            OracleResult r = extrapolate(targs.tuple(), cutoff, levels, ctx);
            int d = std::min(digits, 15);
            std::cout << "partial sum (M=" << r.cutoff << "): " << real_str(r.partial, d)
                      << "\n"
                      << "extrapolated: " << real_str(r.extrapolated, d) << "\n"
                      << "error estimate: " << real_str(r.error_estimate, 3) << "\n";
            return 0;
        }

        if (c_verify->parsed()) {
            bool any = false, all_pass = true;
            for (const auto& c : acceptance::criteria()) {
                if (!item.empty() && c.id != item) continue;
                any = true;
                auto o = c.run();
                all_pass = all_pass && o.pass;
                std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << o.detail
                          << std::endl;
            }
            if (!any) {
                std::cerr << "unknown item: " << item << "\n";
                return 2;
            }
            return all_pass ? 0 : 1;
        }

        if (c_tab->parsed()) {
            std::ostringstream os;
            os << "s1,s2,s3,s4,s5,s6,classification,all_rational,value,err_bound,"
                  "oracle_delta\n";
            PrecisionContext dctx(15);
            acceptance::detail::for_each_tuple_up_to(max_weight, [&](const InputTuple& t) {
                Classification c = classify(t);
                if (!c.convergent) return;
                Certificate cert = reduce(t);
                EvalResult v = evaluate(cert.result, ctx);
                OracleResult r = extrapolate(t, 200, 3, dctx);
                ctx.activate();
                Real delta = fabs(v.value.re - Real(r.extrapolated));
                for (int i = 0; i < 6; ++i) os << t.s[i] << ",";
                os << classification_string(c) << ","
                   << (cert.all_rational ? "true" : "false") << ","
                   << real_str(v.value.re, digits) << "," << real_str(v.error_bound, 3)
                   << "," << real_str(delta, 3) << "\n";
            });
            write_output(os.str(), out_path);
            return 0;
        }

        if (c_witten->parsed()) {
            InputTuple t{{witten_s, witten_s, witten_s, witten_s, witten_s, witten_s}};
            Certificate cert = reduce(t);
            EvalResult v = evaluate(cert.result, ctx);
            ctx.activate();
            Real norm = pow(Real(120), witten_s);
            std::cout << real_str(norm * v.value.re, digits) << "\n"
                      << "error bound: " << real_str(norm * v.error_bound, 3) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
