/*
 * cli.cpp
 * -------
 * Subcommand grammar and rendering for the lgforge executable.
 */
#include "lgforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lgforge/catalog.hpp"
#include "lgforge/degeneration.hpp"
#include "lgforge/errors.hpp"
#include "lgforge/laurent.hpp"
#include "lgforge/mutation.hpp"
#include "lgforge/period.hpp"
#include "lgforge/toric.hpp"

namespace lgforge {

namespace {

using json = nlohmann::json;

// Usage problems detected after CLI11 parsing (malformed flag values).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Catalog could not be read or failed validation.
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

IntVec parse_ints(const std::string& text, const std::string& flag) {
    IntVec out;
    for (const auto& part : split(text, ',')) {
        std::string t = trim(part);
        try {
            size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(flag + ": expected comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError(flag + ": expected comma-separated integers");
    return out;
}

// "1,0,0;0,1,0;0,0,1" -> rows
IntMatrix parse_int_rows(const std::string& text, const std::string& flag) {
    IntMatrix m;
    for (const auto& row : split(text, ';')) m.push_back(parse_ints(row, flag));
    return m;
}

std::vector<std::vector<size_t>> parse_blocks(const std::string& text, const std::string& flag) {
    std::vector<std::vector<size_t>> blocks;
    for (const auto& row : split(text, ';')) {
        std::vector<size_t> b;
        if (!trim(row).empty())
            for (long long v : parse_ints(row, flag)) {
                if (v < 0) throw UsageError(flag + ": ray indices must be nonnegative");
                b.push_back(static_cast<size_t>(v));
            }
        blocks.push_back(b);
    }
    return blocks;
}

struct Layout {
    int rank = -1;
    int params = -1;
};

LaurentPolynomial parse_expr(const std::string& text, const Layout& lay) {
    auto [n, r] = infer_layout(text);
    if (lay.rank >= 0) n = lay.rank;
    if (lay.params >= 0) r = lay.params;
    return parse(text, n, r);
}

FanData load_fan(const std::string& spec) {
    static const std::regex product_re("P(\\d+)(xP(\\d+))*");
    if (std::regex_match(spec, product_re)) {
        FanData fan;
        bool first = true;
        for (const auto& part : split(spec, 'x')) {
            FanData f = fans::projective_space(std::stoi(part.substr(1)));
            fan = first ? f : fans::product(fan, f);
            first = false;
        }
        return fan;
    }
    std::ifstream in(spec);
    if (!in) throw UsageError("--fan: cannot open '" + spec + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("--fan: '" + spec + "' is not valid JSON: " + e.what());
    }
    FanData fan = FanData::from_json(j);
    fan.validate();
    return fan;
}

json series_json(const PeriodSeries& s) {
    return json::parse(s.to_json());
}

std::string series_text(const PeriodSeries& s) {
    std::string out = "[";
    for (size_t i = 0; i < s.coefficients.size(); ++i) out += (i ? "," : "") + render(s.coefficients[i]);
    return out + "]";
}

json rationals_json(const std::vector<Rational>& v) {
    json j = json::array();
    for (const auto& q : v) j.push_back(render_rational(q));
    return j;
}

std::string rationals_text(const std::vector<Rational>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + render_rational(v[i]);
    return out + "]";
}

std::string ints_text(const IntVec& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

std::string triple_text_of(const MarkovTriple& t) {
    return "(" + t[0].get_str() + "," + t[1].get_str() + "," + t[2].get_str() + ")";
}

// Entries as decimal strings, since they outgrow 64-bit integers quickly.
json triple_json(const MarkovTriple& t) { return json::array({t[0].get_str(), t[1].get_str(), t[2].get_str()}); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string poly_text(const LaurentPolynomial& f, bool compact) {
    return compact ? render_compact(f) : render(f);
}

}  // namespace

std::pair<int, int> infer_layout(const std::string& text) {
    static const std::regex ident("[A-Za-z][A-Za-z0-9_']*");
    int n = 0, r = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
        std::string id = it->str();
        if (id == "x") n = std::max(n, 1);
        else if (id == "y") n = std::max(n, 2);
        else if (id == "z") n = std::max(n, 3);
        else if (id == "w") n = std::max(n, 4);
        else if (id == "a") r = std::max(r, 1);
        else if (id.size() > 1 && (id[0] == 'x' || id[0] == 'a') &&
                 std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int k = std::stoi(id.substr(1, 6));
            (id[0] == 'x' ? n : r) = std::max(id[0] == 'x' ? n : r, k);
        }
    }
    return {n, r};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"lgforge: exact computations with toric Landau-Ginzburg models", "lgforge"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand registers the flags it uses.
    int N = 10;
    bool as_json = false, compact = false, classical = false, inverse = false, timing = false;
    unsigned threads = 0;
    Layout lay;
    std::string expr, wtext, atext, fan_spec, dtext, id_filter, matrix_text, nef_text, proj_text, triple_text;
    std::vector<std::string> sets, dyings, images;
    int slot = -1, depth = -1;

    auto add_json = [&](CLI::App* s) { s->add_flag("--json", as_json, "Machine-readable output"); };
    auto add_layout = [&](CLI::App* s) {
        s->add_option("--rank", lay.rank, "Number of torus variables (inferred by default)")->check(CLI::Range(0, kMaxVars));
        s->add_option("--params", lay.params, "Number of parameters (inferred by default)")->check(CLI::NonNegativeNumber);
    };
    auto add_order = [&](CLI::App* s) {
        s->add_option("--n", N, "Period order")->check(CLI::NonNegativeNumber);
    };
    auto add_threads = [&](CLI::App* s) {
        s->add_option("--threads", threads, "Worker threads (default: available parallelism)");
    };

    auto* period_cmd = app.add_subcommand("period", "Regularized (or classical) period sequence of a Laurent polynomial");
    period_cmd->add_option("expr", expr, "Laurent polynomial")->required();
    add_order(period_cmd);
    period_cmd->add_flag("--classical", classical, "Divide coefficient d by d!");
    add_layout(period_cmd);
    add_json(period_cmd);

    auto* reg_cmd = app.add_subcommand("regularize", "Convert a classical period sequence to the regularized one");
    std::string series_text_in;
    reg_cmd->add_option("series", series_text_in, "Comma-separated rationals c_0,c_1,...")->required();
    reg_cmd->add_flag("--inverse", inverse, "Convert regularized to classical instead");
    add_json(reg_cmd);

    auto* mutate_cmd = app.add_subcommand("mutate", "Apply the mutation x^v -> x^v a^{w(v)}");
    mutate_cmd->add_option("expr", expr, "Laurent polynomial")->required();
    mutate_cmd->add_option("--w", wtext, "Primitive weight vector, comma-separated")->required();
    mutate_cmd->add_option("--a", atext, "Factor supported on the kernel of w")->required();
    mutate_cmd->add_flag("--inverse", inverse, "Apply the inverse mutation");
    mutate_cmd->add_flag("--compact", compact, "Print without '*' for rank <= 4");
    add_order(mutate_cmd);
    add_layout(mutate_cmd);
    add_json(mutate_cmd);

    auto* chain_cmd = app.add_subcommand("chain", "Run and verify a chain of mutations, coordinate changes and substitutions");
    std::string chain_file;
    chain_cmd->add_option("file", chain_file, "JSON file {start, steps, expect, modulo_constant?}")->required();
    add_order(chain_cmd);
    add_layout(chain_cmd);
    add_json(chain_cmd);

    auto* coords_cmd = app.add_subcommand("coords", "Apply a unimodular monomial change of coordinates");
    coords_cmd->add_option("expr", expr, "Laurent polynomial")->required();
    coords_cmd->add_option("--matrix", matrix_text, "Rows separated by ';'; column i is the image exponent of variable i");
    coords_cmd->add_option("--image", images, "Variable image such as y=x*y (repeatable)");
    coords_cmd->add_flag("--compact", compact, "Print without '*' for rank <= 4");
    add_layout(coords_cmd);
    add_json(coords_cmd);

    auto* subst_cmd = app.add_subcommand("subst", "Specialize parameters or take parameter limits");
    subst_cmd->add_option("expr", expr, "Laurent polynomial")->required();
    subst_cmd->add_option("--set", sets, "Assignment such as a1=1/2 (repeatable)");
    subst_cmd->add_option("--dying", dyings, "Parameter sent to 0; fails if the limit diverges (repeatable)");
    subst_cmd->add_flag("--compact", compact, "Print without '*' for rank <= 4");
    add_layout(subst_cmd);
    add_json(subst_cmd);

    auto* newton_cmd = app.add_subcommand("newton", "Vertices and dimension of the Newton polytope");
    newton_cmd->add_option("expr", expr, "Laurent polynomial")->required();
    add_layout(newton_cmd);
    add_json(newton_cmd);

    auto* toric_cmd = app.add_subcommand("toric", "Toric models and quantum-period oracles");
    toric_cmd->require_subcommand(1);
    auto add_fan = [&](CLI::App* s) {
        s->add_option("--fan", fan_spec, "Fan JSON file, or a product name such as P2 or P1xP2")->required();
        add_json(s);
    };
    auto* hv_cmd = toric_cmd->add_subcommand("hv", "Hori-Vafa model: sum of x^v over the rays");
    add_fan(hv_cmd);
    auto* pair_cmd = toric_cmd->add_subcommand("pair", "Parametrized toric model and class group data");
    add_fan(pair_cmd);
    auto* qp_cmd = toric_cmd->add_subcommand("qp", "Regularized quantum period from the relation monoid");
    add_fan(qp_cmd);
    add_order(qp_cmd);
    auto* ci_cmd = toric_cmd->add_subcommand("ci", "Regularized quantum period of a complete intersection");
    add_fan(ci_cmd);
    add_order(ci_cmd);
    ci_cmd->add_option("--nef", nef_text, "Ray-index blocks S0;S1;...;Sk (S0 may be empty)")->required();
    auto* fibre_cmd = toric_cmd->add_subcommand("fibre", "Fibre fan of a projection");
    add_fan(fibre_cmd);
    fibre_cmd->add_option("--projection", proj_text, "Projection matrix rows separated by ';'")->required();
    auto* wpp_cmd = toric_cmd->add_subcommand("wpp", "Fan polytope of a weighted projective plane");
    wpp_cmd->add_option("weights", triple_text, "Three positive weights, comma-separated")->required();
    add_json(wpp_cmd);

    auto* degen_cmd = app.add_subcommand("degenerate", "Supports of f_min and f_max for a divisor direction");
    degen_cmd->add_option("--fan", fan_spec, "Fan JSON file or product name")->required();
    degen_cmd->add_option("--d", dtext, "Divisor coefficients aligned with the rays, comma-separated rationals")->required();
    add_json(degen_cmd);

    auto* markov_cmd = app.add_subcommand("markov", "Markov triples: single mutation or the mutation tree");
    markov_cmd->add_option("triple", triple_text, "Triple a,b,c (for --slot)");
    markov_cmd->add_option("--slot", slot, "Slot 0, 1 or 2 to mutate")->check(CLI::Range(0, 2));
    markov_cmd->add_option("--depth", depth, "Enumerate the tree from (1,1,1) to this depth")->check(CLI::NonNegativeNumber);
    add_json(markov_cmd);

    auto* catalog_cmd = app.add_subcommand("catalog", "Inspect and verify the model catalog");
    catalog_cmd->require_subcommand(1);
    std::string catalog_file;
    auto* list_cmd = catalog_cmd->add_subcommand("list", "List catalog entries");
    list_cmd->add_option("--id", id_filter, "Id, prefix or glob");
    list_cmd->add_option("--catalog", catalog_file, "Catalog file (overrides LGFORGE_CATALOG)");
    add_json(list_cmd);
    auto* verify_cmd = catalog_cmd->add_subcommand("verify", "Run the declared checks");
    verify_cmd->add_option("--id", id_filter, "Id, prefix or glob");
    verify_cmd->add_option("--catalog", catalog_file, "Catalog file (overrides LGFORGE_CATALOG)");
    verify_cmd->add_flag("--timing", timing, "Report per-entry wall time");
    add_order(verify_cmd);
    add_threads(verify_cmd);
    add_json(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto load_catalog = [&]() {
        try {
            return catalog_file.empty() ? Catalog::load_default() : Catalog::load_file(catalog_file);
        } catch (const std::exception& e) {
            throw LoadError(e.what());
        }
    };

    try {
        if (period_cmd->parsed()) {
            LaurentPolynomial f = parse_expr(expr, lay);
            PeriodSeries s = period_coefficients(f, N, classical ? Flavor::Classical : Flavor::Regularized, PowerMode::Pruned);
            if (as_json)
                emit(out, {{"command", "period"},
                           {"order", N},
                           {"flavor", classical ? "classical" : "regularized"},
                           {"coefficients", series_json(s)}});
            else
                out << (classical ? "classical " : "regularized ") << series_text(s) << "\n";
        } else if (reg_cmd->parsed()) {
            std::vector<Rational> v;
            try {
                v = parse_rational_list(series_text_in);
            } catch (const Error& e) {
                throw UsageError(std::string("series: ") + e.what());
            }
            Rational fact = 1;
            for (size_t d = 0; d < v.size(); ++d) {
                if (d > 0) fact *= static_cast<long>(d);
                v[d] = inverse ? Rational(v[d] / fact) : Rational(v[d] * fact);
            }
            if (as_json)
                emit(out, {{"command", "regularize"},
                           {"flavor", inverse ? "classical" : "regularized"},
                           {"coefficients", rationals_json(v)}});
            else
                out << (inverse ? "classical " : "regularized ") << rationals_text(v) << "\n";
        } else if (mutate_cmd->parsed()) {
            LaurentPolynomial f = parse_expr(expr, lay);
            IntVec w = parse_ints(wtext, "--w");
            if (w.size() != static_cast<size_t>(f.rank()))
                throw UsageError("--w: length " + std::to_string(w.size()) + " does not match rank " + std::to_string(f.rank()));
            MutationData m = MutationData::make(w, parse(atext, f.rank(), f.param_rank()));
            LaurentPolynomial g = inverse ? invert_mutation(f, m) : mutate(f, m);
            if (as_json) {
                bool preserved = period_coefficients(f, N, Flavor::Regularized, PowerMode::Pruned) ==
                                 period_coefficients(g, N, Flavor::Regularized, PowerMode::Pruned);
                emit(out, {{"command", "mutate"},
                           {"result", render(g)},
                           {"period_preserved", preserved},
                           {"order", N}});
            } else {
                out << poly_text(g, compact) << "\n";
            }
        } else if (chain_cmd->parsed()) {
            std::ifstream in(chain_file);
            if (!in) throw UsageError("cannot open chain file '" + chain_file + "'");
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError(std::string("chain file is not valid JSON: ") + e.what());
            }
            if (!j.contains("start") || !j.contains("steps") || !j.contains("expect"))
                throw UsageError("chain file needs 'start', 'steps' and 'expect'");
            LaurentPolynomial start = parse_expr(j["start"].get<std::string>(), lay);
            std::vector<ChainStep> steps;
            int pr = start.param_rank();
            for (const auto& sj : j["steps"]) {
                steps.push_back(ChainStep::from_json(sj, start.rank(), pr));
                if (steps.back().kind == ChainStep::Kind::Subst) pr -= static_cast<int>(steps.back().assign.size());
            }
            LaurentPolynomial expect = parse(j["expect"].get<std::string>(), start.rank(), pr);
            ChainReport rep = verify_chain(start, steps, expect, N, j.value("modulo_constant", false));
            if (as_json) {
                json r = {{"command", "chain"}, {"ok", rep.ok}, {"final_matches", rep.final_matches}, {"message", rep.message}};
                if (rep.final_value) r["final"] = render(*rep.final_value);
                if (rep.constant_difference) r["constant_difference"] = render_rational(*rep.constant_difference);
                r["steps"] = json::array();
                for (const auto& s : rep.steps) {
                    json sj = {{"index", s.index}, {"kind", s.kind}, {"ok", s.ok}, {"message", s.message}};
                    if (s.period_preserved) sj["period_preserved"] = *s.period_preserved;
                    if (s.result) sj["result"] = render(*s.result);
                    r["steps"].push_back(sj);
                }
                emit(out, r);
            } else {
                for (const auto& s : rep.steps)
                    out << "step " << s.index + 1 << " " << s.kind << ": " << (s.ok ? "ok" : "FAILED")
                        << (s.result ? " -> " + render(*s.result) : std::string()) << (s.message.empty() ? "" : "  (" + s.message + ")")
                        << "\n";
                out << (rep.ok ? "chain ok" : "chain FAILED") << (rep.message.empty() ? "" : ": " + rep.message) << "\n";
            }
            return rep.ok ? 0 : 1;
        } else if (coords_cmd->parsed()) {
            LaurentPolynomial f = parse_expr(expr, lay);
            json step = {{"kind", "coords"}};
            if (!matrix_text.empty() == !images.empty()) throw UsageError("coords needs exactly one of --matrix or --image");
            if (!matrix_text.empty()) {
                step["matrix"] = parse_int_rows(matrix_text, "--matrix");
            } else {
                json im = json::object();
                for (const auto& s : images) {
                    auto eq = s.find('=');
                    if (eq == std::string::npos) throw UsageError("--image: expected var=monomial, got '" + s + "'");
                    im[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
                }
                step["images"] = im;
            }
            ChainStep cs = ChainStep::from_json(step, f.rank(), f.param_rank());
            LaurentPolynomial g = apply_monomial_map(f, cs.matrix);
            if (as_json)
                emit(out, {{"command", "coords"}, {"matrix", cs.matrix}, {"result", render(g)}});
            else
                out << poly_text(g, compact) << "\n";
        } else if (subst_cmd->parsed()) {
            LaurentPolynomial f = parse_expr(expr, lay);
            std::set<int> dying;
            std::map<int, Rational> values;
            for (const auto& d : dyings) dying.insert(parameter_index(trim(d), f.param_rank()));
            for (const auto& s : sets) {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw UsageError("--set: expected name=value, got '" + s + "'");
                values[parameter_index(trim(s.substr(0, eq)), f.param_rank())] =
                    parse(trim(s.substr(eq + 1)), 0, 0).rational_value();
            }
            if (!dying.empty()) {
                parameter_limit(f, dying);
                for (int i : dying) values[i] = 0;
            }
            LaurentPolynomial g = substitute_parameters(f, values);
            if (as_json)
                emit(out, {{"command", "subst"}, {"result", render(g)}, {"params", g.param_rank()}});
            else
                out << poly_text(g, compact) << "\n";
        } else if (newton_cmd->parsed()) {
            LaurentPolynomial f = parse_expr(expr, lay);
            NewtonPolytopeData P = newton_polytope(f);
            if (as_json) {
                emit(out, {{"command", "newton"}, {"rank", P.rank}, {"dimension", P.dimension}, {"vertices", P.vertices}});
            } else {
                out << "dimension " << P.dimension << ", " << P.vertices.size() << " vertices\n";
                for (const auto& v : P.vertices) out << "  " << ints_text(v) << "\n";
            }
        } else if (toric_cmd->parsed()) {
            if (wpp_cmd->parsed()) {
                IntVec w = parse_ints(triple_text, "weights");
                if (w.size() != 3) throw UsageError("weights: expected three integers");
                NewtonPolytopeData P = wpp_fan_polytope(w[0], w[1], w[2]);
                std::vector<IntVec> nf = gl2_normal_form(P.vertices);
                if (as_json) {
                    emit(out, {{"command", "toric wpp"}, {"weights", w}, {"vertices", P.vertices}, {"normal_form", nf}});
                } else {
                    out << "vertices";
                    for (const auto& v : P.vertices) out << " " << ints_text(v);
                    out << "\nnormal form";
                    for (const auto& v : nf) out << " " << ints_text(v);
                    out << "\n";
                }
                return 0;
            }
            FanData fan = load_fan(fan_spec);
            if (hv_cmd->parsed()) {
                LaurentPolynomial f = hori_vafa(fan);
                if (as_json)
                    emit(out, {{"command", "toric hv"}, {"model", render(f)}});
                else
                    out << render(f) << "\n";
            } else if (pair_cmd->parsed()) {
                ClassGroupData cg = class_group(fan);
                LaurentPolynomial f = toric_pair_model(fan, cg);
                if (as_json) {
                    emit(out, {{"command", "toric pair"},
                               {"model", render(f)},
                               {"class_rank", cg.class_rank},
                               {"class_map", cg.class_map},
                               {"basis_rays", cg.basis_rays}});
                } else {
                    out << render(f) << "\n";
                    out << "class group rank " << cg.class_rank << ", basis rays";
                    for (size_t s : cg.basis_rays) out << " " << s;
                    out << "\n";
                    for (size_t i = 0; i < fan.rays.size(); ++i)
                        out << "  D" << i << " " << ints_text(fan.rays[i]) << " class " << ints_text(cg.class_map[i]) << "\n";
                }
            } else if (qp_cmd->parsed()) {
                PeriodSeries s = toric_quantum_period(fan, class_group(fan), N);
                if (as_json)
                    emit(out, {{"command", "toric qp"}, {"order", N}, {"coefficients", series_json(s)}});
                else
                    out << "regularized " << series_text(s) << "\n";
            } else if (ci_cmd->parsed()) {
                NefPartition part{parse_blocks(nef_text, "--nef")};
                PeriodSeries s = ci_quantum_period(fan, class_group(fan), part, N);
                if (as_json)
                    emit(out, {{"command", "toric ci"}, {"order", N}, {"coefficients", series_json(s)}});
                else
                    out << "regularized " << series_text(s) << "\n";
            } else if (fibre_cmd->parsed()) {
                FanData fib = fibre_fan(fan, parse_int_rows(proj_text, "--projection"));
                if (as_json) {
                    emit(out, {{"command", "toric fibre"}, {"fan", fib.to_json()}});
                } else {
                    out << "rank " << fib.rank << ", rays";
                    for (const auto& v : fib.rays) out << " " << ints_text(v);
                    out << "\n";
                }
            }
        } else if (degen_cmd->parsed()) {
            FanData fan = load_fan(fan_spec);
            std::vector<Rational> d;
            try {
                d = parse_rational_list(dtext);
            } catch (const Error& e) {
                throw UsageError(std::string("--d: ") + e.what());
            }
            DegenerationResult res = direction_degeneration(DivisorOnFan::make(fan, d));
            LaurentPolynomial fmin = ray_model(fan, res.f_min_support), fmax = ray_model(fan, res.f_max_support);
            if (as_json) {
                json j = res.to_json();
                j["command"] = "degenerate";
                j["f_min"] = render(fmin);
                j["f_max"] = render(fmax);
                emit(out, j);
            } else {
                out << "f_min = " << render(fmin) << "\n";
                out << "f_max = " << render(fmax) << "\n";
                for (size_t i = 0; i < res.intervals.size(); ++i)
                    out << "  ray " << i << " " << ints_text(fan.rays[i]) << ": [" << render_rational(res.intervals[i].first)
                        << ", " << render_rational(res.intervals[i].second) << "]\n";
            }
        } else if (markov_cmd->parsed()) {
            if ((slot >= 0) == (depth >= 0)) throw UsageError("markov needs exactly one of --slot or --depth");
            if (slot >= 0) {
                IntVec t = parse_ints(triple_text, "triple");
                if (t.size() != 3) throw UsageError("triple: expected three integers");
                MarkovTriple m = markov_mutate({Integer(static_cast<long>(t[0])), Integer(static_cast<long>(t[1])),
                                                Integer(static_cast<long>(t[2]))},
                                               slot);
                if (as_json)
                    emit(out, {{"command", "markov"}, {"result", triple_json(m)}});
                else
                    out << triple_text_of(m) << "\n";
            } else {
                std::vector<MarkovTriple> tree = markov_tree(depth);
                if (as_json) {
                    json arr = json::array();
                    for (const auto& t : tree) arr.push_back(triple_json(t));
                    emit(out, {{"command", "markov"}, {"depth", depth}, {"count", tree.size()}, {"triples", arr}});
                } else {
                    out << tree.size() << " distinct triples to depth " << depth << "\n";
                    for (const auto& t : tree) out << "  " << triple_text_of(t) << "\n";
                }
            }
        } else if (catalog_cmd->parsed()) {
            Catalog cat = load_catalog();
            if (list_cmd->parsed()) {
                auto sel = cat.select(id_filter);
                if (as_json) {
                    json arr = json::array();
                    for (const auto* e : sel) arr.push_back(e->to_json());
                    emit(out, {{"command", "catalog list"}, {"entries", arr}});
                } else {
                    for (const auto* e : sel)
                        out << e->id << "  dim " << e->dim << "  rho " << e->picard_rank << "  " << e->checks.size()
                            << " checks" << (e->geometric_only ? "  geometric-only" : "")
                            << (e->name.empty() ? "" : "  " + e->name) << "\n";
                }
                return 0;
            }
            if (!id_filter.empty() && cat.select(id_filter).empty())
                throw UsageError("--id: no catalog entry matches '" + id_filter + "'");
            VerifySummary sum = verify_all(cat, N, id_filter, threads);
            if (as_json) {
                json j = sum.to_json(timing);
                j["command"] = "catalog verify";
                j["order"] = N;
                emit(out, j);
            } else {
                for (const auto& r : sum.reports) {
                    out << (r.pass ? "PASS " : "FAIL ") << r.id;
                    if (r.geometric_only) out << " (geometric only)";
                    if (timing) out << "  [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
                    out << "\n";
                    for (const auto& c : r.checks) {
                        out << "  " << (c.pass ? "ok   " : "FAIL ") << c.kind << ": " << c.message;
                        if (c.witness_degree) out << " (witness degree " << *c.witness_degree << ")";
                        out << "\n";
                    }
                }
                out << sum.reports.size() << " entries, " << sum.checks_run << " checks, " << sum.checks_failed
                    << " failed\n";
            }
            return sum.pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const LoadError& e) {
        err << "catalog error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace lgforge
