/*
 * catalog.cpp
 * -----------
 * Catalog loading, validation, check execution and the threaded harness.
 */
#include "lgforge/catalog.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "lgforge/degeneration.hpp"
#include "lgforge/errors.hpp"
#include "lgforge/mutation.hpp"
#include "lgforge/period.hpp"
#include "lgforge/toric.hpp"

namespace lgforge {

extern const char* const kEmbeddedCatalog;

namespace {

using json = nlohmann::json;

const std::set<std::string> kKinds = {"exact_equal",          "period_match",
                                      "mutation_chain",       "parameter_limit_edge",
                                      "direction_degeneration_edge", "toric_oracle"};

[[noreturn]] void schema_error(const std::string& id, const std::string& field, const std::string& what) {
    throw CatalogError("entry '" + id + "', field '" + field + "': " + what);
}

std::string expected_param_name(size_t i, size_t r) {
    return parameter_name(static_cast<int>(i), static_cast<int>(r));
}

// Presence and type checks for each check kind.
void validate_check(const std::string& id, size_t idx, const json& c) {
    std::string where = "checks[" + std::to_string(idx) + "]";
    if (!c.is_object()) schema_error(id, where, "must be an object");
    if (!c.contains("kind") || !c["kind"].is_string()) schema_error(id, where + ".kind", "missing string");
    std::string kind = c["kind"];
    if (!kKinds.count(kind)) schema_error(id, where + ".kind", "unknown kind '" + kind + "'");
    auto need_string = [&](const char* f) {
        if (!c.contains(f) || !c[f].is_string()) schema_error(id, where + "." + f, "missing string");
    };
    if (c.contains("source") && !(c["source"].is_string() || c["source"].is_object()))
        schema_error(id, where + ".source", "must be an expression or an object");
    if (c.contains("n") && !c["n"].is_number_integer()) schema_error(id, where + ".n", "must be an integer");
    if (kind == "exact_equal" || kind == "period_match") {
        if (!c.contains("expect") && !c.contains("target"))
            schema_error(id, where, "needs 'expect' or 'target'");
        if (c.contains("expect")) need_string("expect");
        if (c.contains("target")) need_string("target");
        if (c.contains("shift") && !c["shift"].is_string()) schema_error(id, where + ".shift", "must be a string");
    } else if (kind == "mutation_chain") {
        if (!c.contains("steps") || !c["steps"].is_array()) schema_error(id, where + ".steps", "missing array");
        need_string("expect");
    } else if (kind == "parameter_limit_edge") {
        if (!c.contains("dying") || !c["dying"].is_array()) schema_error(id, where + ".dying", "missing array");
        need_string("expect");
    } else if (kind == "direction_degeneration_edge") {
        if (!c.contains("fan") || !c["fan"].is_object()) schema_error(id, where + ".fan", "missing object");
        need_string("d");
        need_string("expect_min");
        need_string("expect_max");
    } else if (kind == "toric_oracle") {
        if (!c.contains("fan") || !c["fan"].is_object()) schema_error(id, where + ".fan", "missing object");
        if (c.contains("nef_partition") && !c["nef_partition"].is_array())
            schema_error(id, where + ".nef_partition", "must be an array of ray-index arrays");
    }
}

// ---------------------------------------------------------------------------
// Polynomial plumbing for checks
// ---------------------------------------------------------------------------

LaurentPolynomial parse_at(const std::string& text, const LaurentPolynomial& layout) {
    return parse(text, layout.rank(), layout.param_rank());
}

LaurentPolynomial all_params_one(const LaurentPolynomial& f) {
    std::map<int, Rational> ones;
    for (int i = 0; i < f.param_rank(); ++i) ones[i] = 1;
    return substitute_parameters(f, ones);
}

LaurentPolynomial fibre_slice(const LaurentPolynomial& f, const IntVec& w) {
    if (w.size() != static_cast<size_t>(f.rank())) throw RankMismatch("fibre covector has the wrong length");
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& [e, c] : f.terms())
        if (weight(w, e) == 0) terms.emplace_back(e, c);
    return LaurentPolynomial::from_terms(f.rank(), f.param_rank(), std::move(terms));
}

LaurentPolynomial run_steps(LaurentPolynomial f, const json& steps) {
    for (const auto& sj : steps) {
        ChainStep s = ChainStep::from_json(sj, f.rank(), f.param_rank());
        switch (s.kind) {
            case ChainStep::Kind::Mutation: f = mutate(f, *s.mutation); break;
            case ChainStep::Kind::Coords: f = apply_monomial_map(f, s.matrix); break;
            case ChainStep::Kind::Subst: f = substitute_parameters(f, s.assign); break;
        }
    }
    return f;
}

// Applies dying / subst / chain / fibre found in `ops` to f, in that order.
LaurentPolynomial apply_ops(LaurentPolynomial f, const json& ops) {
    std::set<int> dying;
    std::map<int, Rational> values;
    if (ops.contains("dying"))
        for (const auto& name : ops["dying"]) dying.insert(parameter_index(name.get<std::string>(), f.param_rank()));
    if (ops.contains("subst"))
        for (const auto& [name, v] : ops["subst"].items()) {
            std::string text = v.is_string() ? v.get<std::string>() : v.dump();
            values[parameter_index(name, f.param_rank())] = parse(text, 0, 0).rational_value();
        }
    if (!dying.empty()) {
        // Check divergence on the full model before substituting the rest.
        parameter_limit(f, dying);
        for (int i : dying) values[i] = 0;
    }
    if (!values.empty()) f = substitute_parameters(f, values);
    if (ops.contains("chain")) f = run_steps(f, ops["chain"]);
    if (ops.contains("fibre")) f = fibre_slice(f, ops["fibre"].get<IntVec>());
    return f;
}

LaurentPolynomial resolve_source(const CatalogEntry& entry, const json& check) {
    if (!check.contains("source")) return entry.parsed_model();
    const json& s = check["source"];
    if (s.is_string()) return parse(s.get<std::string>(), entry.dim, entry.param_rank());
    LaurentPolynomial base = s.contains("expr") ? parse(s["expr"].get<std::string>(), entry.dim, entry.param_rank())
                                                : entry.parsed_model();
    return apply_ops(base, s);
}

LaurentPolynomial resolve_expected(const Catalog& cat, const json& check, const LaurentPolynomial& layout) {
    if (check.contains("expect")) return parse_at(check["expect"].get<std::string>(), layout);
    const std::string target = check["target"];
    const CatalogEntry* t = cat.find(target);
    if (!t) throw CatalogError("unknown target entry '" + target + "'");
    if (t->geometric_only) throw CatalogError("target entry '" + target + "' has no model");
    return t->parsed_model();
}

bool equal_modulo(const LaurentPolynomial& a, const LaurentPolynomial& b, bool modulo_constant) {
    if (a.rank() != b.rank() || a.param_rank() != b.param_rank()) return false;
    if (!modulo_constant) return a == b;
    return (a - b).is_constant();
}

// Drops the parameter layout of a polynomial in which no parameter occurs.
LaurentPolynomial without_parameters(const LaurentPolynomial& f) {
    if (f.param_rank() == 0) return f;
    const int n = f.rank();
    for (const auto& [e, c] : f.terms())
        if (!e.is_zero_in(n, n + f.param_rank())) throw DomainError("period_match needs parameter-free polynomials");
    return LaurentPolynomial::from_terms(n, 0, f.terms());
}

std::vector<LaurentPolynomial> series(const LaurentPolynomial& f, int N) {
    return period_coefficients(f, N, Flavor::Regularized, PowerMode::Pruned).coefficients;
}

std::optional<int> first_series_difference(const std::vector<LaurentPolynomial>& a,
                                           const std::vector<LaurentPolynomial>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t d = 0; d < n; ++d)
        if (!(a[d] == b[d])) return static_cast<int>(d);
    return std::nullopt;
}

// First degree where the periods of f and g differ (up to shift if requested).
std::optional<int> witness(const LaurentPolynomial& f, const LaurentPolynomial& g, int N, bool up_to_shift) {
    try {
        if (f.param_rank() == 0 && g.param_rank() == 0) return first_period_mismatch(f, g, N, up_to_shift);
        if (f.param_rank() != g.param_rank()) return std::nullopt;
        return first_series_difference(series(f, N), series(g, N));
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Regularized rational series a (reference) and b agree up to e^{st}; returns
// the first degree where they do not.
std::optional<int> series_mismatch_up_to_shift(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    size_t n = std::min(a.size(), b.size());
    if (n <= 1) return std::nullopt;
    std::vector<Rational> ca(n), cb(n), fact(n);
    fact[0] = 1;
    for (size_t d = 1; d < n; ++d) fact[d] = fact[d - 1] * static_cast<long>(d);
    for (size_t d = 0; d < n; ++d) {
        ca[d] = a[d] / fact[d];
        cb[d] = b[d] / fact[d];
    }
    if (ca[0] != cb[0]) return 0;
    Rational s = cb[1] - ca[1];
    for (size_t d = 0; d < n; ++d) {
        // (e^{st} * A)_d = sum_k s^k / k! * A_{d-k}
        Rational acc = 0, sp = 1;
        for (size_t k = 0; k <= d; ++k) {
            acc += sp / fact[k] * ca[d - k];
            sp *= s;
        }
        if (acc != cb[d]) return static_cast<int>(d);
    }
    return std::nullopt;
}

std::string render_degree(const std::optional<int>& d) {
    return d ? std::to_string(*d) : std::string("none");
}

// ---------------------------------------------------------------------------
// Check kinds
// ---------------------------------------------------------------------------

struct Context {
    const Catalog& cat;
    const CatalogEntry& entry;
    const json& c;
    int N;
    bool modulo;
};

void run_exact_equal(const Context& ctx, CheckResult& r) {
    LaurentPolynomial src = resolve_source(ctx.entry, ctx.c);
    LaurentPolynomial exp = resolve_expected(ctx.cat, ctx.c, src);
    r.pass = equal_modulo(src, exp, ctx.modulo);
    if (r.pass) {
        r.message = ctx.modulo ? "equal up to a constant" : "equal";
    } else {
        r.witness_degree = witness(src, exp, ctx.N, ctx.modulo);
        r.message = "polynomials differ: got " + render(src);
    }
}

void run_period_match(const Context& ctx, CheckResult& r) {
    LaurentPolynomial src = without_parameters(resolve_source(ctx.entry, ctx.c));
    LaurentPolynomial exp = without_parameters(resolve_expected(ctx.cat, ctx.c, src));
    std::optional<Rational> pinned;
    if (ctx.c.contains("shift")) pinned = parse(ctx.c["shift"].get<std::string>(), 0, 0).rational_value();
    auto shift = period_equal_up_to_shift(src, exp, ctx.N);
    std::string against = ctx.c.contains("target") ? ctx.c["target"].get<std::string>() : std::string("expected series");
    if (shift && (!pinned || *pinned == *shift)) {
        r.pass = true;
        r.message = "period matches " + against + " to order " + std::to_string(ctx.N) + " with shift " +
                    render_rational(*shift);
        return;
    }
    r.pass = false;
    if (pinned) {
        LaurentPolynomial shifted = src + LaurentPolynomial::constant(src.rank(), 0, *pinned);
        r.witness_degree = witness(shifted, exp, ctx.N, false);
    } else {
        r.witness_degree = witness(src, exp, ctx.N, true);
    }
    r.message = shift ? "period matches " + against + " only with shift " + render_rational(*shift) + " (expected " +
                            render_rational(*pinned) + ")"
                      : "period differs from " + against;
}

void run_mutation_chain(const Context& ctx, CheckResult& r) {
    LaurentPolynomial start = resolve_source(ctx.entry, ctx.c);
    std::vector<ChainStep> steps;
    bool has_subst = false;
    int pr = start.param_rank();
    for (const auto& sj : ctx.c["steps"]) {
        steps.push_back(ChainStep::from_json(sj, start.rank(), pr));
        if (steps.back().kind == ChainStep::Kind::Subst) {
            has_subst = true;
            pr -= static_cast<int>(steps.back().assign.size());
        }
    }
    LaurentPolynomial exp = parse_at(ctx.c["expect"].get<std::string>(), LaurentPolynomial(start.rank(), pr));
    ChainReport rep = verify_chain(start, steps, exp, ctx.N, ctx.modulo);
    r.pass = rep.ok;
    if (rep.ok) {
        r.message = std::to_string(steps.size()) + " steps, periods preserved to order " + std::to_string(ctx.N);
        return;
    }
    r.message = rep.message;
    if (!has_subst) {
        r.witness_degree = witness(start, exp, ctx.N, ctx.modulo);
        if (!r.witness_degree && rep.final_value) r.witness_degree = witness(*rep.final_value, exp, ctx.N, ctx.modulo);
    }
}

void run_parameter_limit(const Context& ctx, CheckResult& r) {
    LaurentPolynomial base = resolve_source(ctx.entry, ctx.c);
    LaurentPolynomial got = apply_ops(base, ctx.c);
    LaurentPolynomial exp = parse_at(ctx.c["expect"].get<std::string>(), got);
    r.pass = equal_modulo(got, exp, ctx.modulo);
    if (r.pass) {
        r.message = "limit equals " + render(exp);
    } else {
        r.witness_degree = witness(got, exp, ctx.N, ctx.modulo);
        r.message = "limit is " + render(got);
    }
}

void run_direction_degeneration(const Context& ctx, CheckResult& r) {
    FanData fan = FanData::from_json(ctx.c["fan"]);
    auto D = DivisorOnFan::make(fan, parse_rational_list(ctx.c["d"].get<std::string>()));
    DegenerationResult res = direction_degeneration(D);
    LaurentPolynomial fmin = ray_model(fan, res.f_min_support), fmax = ray_model(fan, res.f_max_support);
    LaurentPolynomial emin = parse(ctx.c["expect_min"].get<std::string>(), fan.rank, 0);
    LaurentPolynomial emax = parse(ctx.c["expect_max"].get<std::string>(), fan.rank, 0);
    bool okmin = fmin == emin, okmax = fmax == emax;
    r.pass = okmin && okmax;
    r.message = "f_min = " + render(fmin) + ", f_max = " + render(fmax);
    if (!okmin)
        r.witness_degree = witness(fmin, emin, ctx.N, false);
    else if (!okmax)
        r.witness_degree = witness(fmax, emax, ctx.N, false);
}

void run_toric_oracle(const Context& ctx, CheckResult& r) {
    FanData fan = FanData::from_json(ctx.c["fan"]);
    ClassGroupData cg = class_group(fan);
    LaurentPolynomial src = resolve_source(ctx.entry, ctx.c);
    LaurentPolynomial at_one = all_params_one(src);
    std::vector<std::string> notes;
    if (ctx.c.contains("nef_partition")) {
        NefPartition part;
        part.blocks = ctx.c["nef_partition"].get<std::vector<std::vector<size_t>>>();
        PeriodSeries ci = ci_quantum_period(fan, cg, part, ctx.N);
        std::vector<Rational> oracle;
        for (const auto& c : ci.coefficients) oracle.push_back(all_params_one(c).rational_value());
        std::vector<Rational> direct = period_coefficients(at_one, ctx.N, Flavor::Regularized, PowerMode::Pruned).rationals();
        auto bad = series_mismatch_up_to_shift(oracle, direct);
        r.pass = !bad;
        r.witness_degree = bad;
        r.message = bad ? "complete-intersection period differs at degree " + render_degree(bad)
                        : "complete-intersection period matches up to shift to order " + std::to_string(ctx.N);
        return;
    }
    LaurentPolynomial hv = hori_vafa(fan);
    bool hv_ok = equal_modulo(at_one, hv, ctx.modulo);
    LaurentPolynomial pair = toric_pair_model(fan, cg);
    auto series_bad = first_series_difference(series(pair, ctx.N), toric_quantum_period(fan, cg, ctx.N).coefficients);
    bool pair_ok = true;
    if (ctx.c.value("pair_model_equal", false)) pair_ok = equal_modulo(src, pair, ctx.modulo);
    r.pass = hv_ok && !series_bad && pair_ok;
    if (r.pass) {
        r.message = "Hori-Vafa model matches; toric-pair period equals the quantum-period formula to order " +
                    std::to_string(ctx.N);
        return;
    }
    if (!hv_ok) {
        r.message = "model at parameters 1 differs from the Hori-Vafa model " + render(hv);
        r.witness_degree = witness(at_one, hv, ctx.N, ctx.modulo);
    } else if (series_bad) {
        r.message = "toric-pair period differs from the quantum-period formula";
        r.witness_degree = series_bad;
    } else {
        r.message = "model differs from the toric-pair model " + render(pair);
        r.witness_degree = witness(src, pair, ctx.N, ctx.modulo);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

LaurentPolynomial CatalogEntry::parsed_model() const {
    if (geometric_only && model.empty()) throw CatalogError("entry '" + id + "' has no model");
    return parse(model, dim, param_rank());
}

CatalogEntry CatalogEntry::from_json(const json& j) {
    CatalogEntry e;
    if (!j.is_object()) throw CatalogError("catalog entry must be an object");
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
        throw CatalogError("catalog entry without a string 'id'");
    e.id = j["id"];
    auto get_int = [&](const char* f, int& out, bool required) {
        if (!j.contains(f)) {
            if (required) schema_error(e.id, f, "missing");
            return;
        }
        if (!j[f].is_number_integer()) schema_error(e.id, f, "must be an integer");
        out = j[f];
    };
    get_int("dim", e.dim, true);
    get_int("picard_rank", e.picard_rank, true);
    if (e.dim < 1 || e.dim > kMaxVars) schema_error(e.id, "dim", "out of range");
    if (e.picard_rank < 0) schema_error(e.id, "picard_rank", "must be nonnegative");
    if (j.contains("name")) {
        if (!j["name"].is_string()) schema_error(e.id, "name", "must be a string");
        e.name = j["name"];
    }
    if (!j.contains("model") || !j["model"].is_string()) schema_error(e.id, "model", "missing string");
    e.model = j["model"];
    if (j.contains("params")) {
        if (!j["params"].is_array()) schema_error(e.id, "params", "must be an array");
        for (const auto& p : j["params"]) {
            if (!p.is_string()) schema_error(e.id, "params", "names must be strings");
            e.params.push_back(p);
        }
    }
    for (size_t i = 0; i < e.params.size(); ++i) {
        std::string want = expected_param_name(i, e.params.size());
        if (e.params[i] != want && !(e.params.size() == 1 && e.params[i] == "a1"))
            schema_error(e.id, "params", "parameter " + std::to_string(i + 1) + " must be named " + want);
    }
    if (j.contains("modulo_constant")) {
        if (!j["modulo_constant"].is_boolean()) schema_error(e.id, "modulo_constant", "must be a boolean");
        e.modulo_constant = j["modulo_constant"];
    }
    if (j.contains("geometric_only")) {
        if (!j["geometric_only"].is_boolean()) schema_error(e.id, "geometric_only", "must be a boolean");
        e.geometric_only = j["geometric_only"];
    }
    if (j.contains("order")) {
        int n = 0;
        get_int("order", n, true);
        if (n < 0) schema_error(e.id, "order", "must be nonnegative");
        e.order = n;
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array()) schema_error(e.id, "checks", "must be an array");
        for (size_t i = 0; i < j["checks"].size(); ++i) {
            validate_check(e.id, i, j["checks"][i]);
            e.checks.push_back(Check{j["checks"][i]["kind"], j["checks"][i]});
        }
    }
    if (e.model.empty()) {
        if (!e.geometric_only) schema_error(e.id, "model", "empty model requires geometric_only");
        if (!e.checks.empty()) schema_error(e.id, "checks", "geometric-only entries without a model carry no checks");
    } else {
        try {
            (void)e.parsed_model();
        } catch (const Error& err) {
            schema_error(e.id, "model", err.what());
        }
    }
    return e;
}

json CatalogEntry::to_json() const {
    json j;
    j["id"] = id;
    if (!name.empty()) j["name"] = name;
    j["dim"] = dim;
    j["picard_rank"] = picard_rank;
    j["model"] = model;
    j["params"] = params;
    j["modulo_constant"] = modulo_constant;
    if (geometric_only) j["geometric_only"] = true;
    if (order) j["order"] = *order;
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back(c.payload);
    return j;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

bool id_less(const std::string& a, const std::string& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
            size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
            nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

bool id_matches(const std::string& filter, const std::string& id, bool exact_exists) {
    if (filter.empty()) return true;
    if (filter.find_first_of("*?[") != std::string::npos) return fnmatch(filter.c_str(), id.c_str(), 0) == 0;
    if (exact_exists) return id == filter;
    return id.compare(0, filter.size(), filter) == 0;
}

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return id_less(a.id, b.id); });
    for (size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].id == entries_[i - 1].id) throw CatalogError("duplicate entry id '" + entries_[i].id + "'");
}

Catalog Catalog::from_text(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Catalog();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
    }
    const json* list = &j;
    if (j.is_object()) {
        if (!j.contains("entries") || !j["entries"].is_array()) throw CatalogError("catalog object needs an 'entries' array");
        list = &j["entries"];
    } else if (!j.is_array()) {
        throw CatalogError("catalog must be an array of entries");
    }
    std::vector<CatalogEntry> entries;
    for (const auto& e : *list) entries.push_back(CatalogEntry::from_json(e));
    return Catalog(std::move(entries));
}

Catalog Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

Catalog Catalog::embedded() { return from_text(kEmbeddedCatalog); }

Catalog Catalog::load_default() {
    const char* path = std::getenv("LGFORGE_CATALOG");
    if (path && *path) return load_file(path);
    return embedded();
}

const CatalogEntry* Catalog::find(const std::string& id) const {
    for (const auto& e : entries_)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<const CatalogEntry*> Catalog::select(const std::string& filter) const {
    bool exact = find(filter) != nullptr;
    std::vector<const CatalogEntry*> out;
    for (const auto& e : entries_)
        if (id_matches(filter, e.id, exact)) out.push_back(&e);
    return out;
}

json Catalog::to_json() const {
    json j;
    j["version"] = 1;
    j["entries"] = json::array();
    for (const auto& e : entries_) j["entries"].push_back(e.to_json());
    return j;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

json CheckResult::to_json() const {
    json j;
    j["index"] = index;
    j["kind"] = kind;
    j["pass"] = pass;
    j["message"] = message;
    if (witness_degree) j["witness_degree"] = *witness_degree;
    return j;
}

json EntryReport::to_json(bool with_timing) const {
    json j;
    j["id"] = id;
    j["pass"] = pass;
    if (geometric_only) j["geometric_only"] = true;
    if (with_timing) j["seconds"] = seconds;
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back(c.to_json());
    return j;
}

json VerifySummary::to_json(bool with_timing) const {
    json j;
    j["pass"] = pass;
    j["entries"] = reports.size();
    j["checks_run"] = checks_run;
    j["checks_failed"] = checks_failed;
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json(with_timing));
    return j;
}

EntryReport verify_entry(const Catalog& catalog, const CatalogEntry& entry, int N) {
    auto t0 = std::chrono::steady_clock::now();
    EntryReport rep;
    rep.id = entry.id;
    rep.geometric_only = entry.geometric_only;
    int order = entry.order ? std::min(N, *entry.order) : N;
    for (size_t i = 0; i < entry.checks.size(); ++i) {
        const Check& chk = entry.checks[i];
        CheckResult r;
        r.index = i;
        r.kind = chk.kind;
        int n = chk.payload.contains("n") ? std::min(order, chk.payload["n"].get<int>()) : order;
        bool modulo = chk.payload.value("modulo_constant", entry.modulo_constant);
        Context ctx{catalog, entry, chk.payload, n, modulo};
        try {
            if (chk.kind == "exact_equal")
                run_exact_equal(ctx, r);
            else if (chk.kind == "period_match")
                run_period_match(ctx, r);
            else if (chk.kind == "mutation_chain")
                run_mutation_chain(ctx, r);
            else if (chk.kind == "parameter_limit_edge")
                run_parameter_limit(ctx, r);
            else if (chk.kind == "direction_degeneration_edge")
                run_direction_degeneration(ctx, r);
            else if (chk.kind == "toric_oracle")
                run_toric_oracle(ctx, r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.message = std::string("error: ") + e.what();
        }
        rep.pass = rep.pass && r.pass;
        rep.checks.push_back(std::move(r));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerifySummary verify_all(const Catalog& catalog, int N, const std::string& filter, unsigned threads) {
    std::vector<const CatalogEntry*> todo = catalog.select(filter);
    std::vector<EntryReport> reports(todo.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<size_t>(1, todo.size()));
    // Largest entries first so one slow entry does not finish last.
    std::vector<size_t> order(todo.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return todo[a]->model.size() * todo[a]->checks.size() > todo[b]->model.size() * todo[b]->checks.size();
    });
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t k; (k = next.fetch_add(1)) < order.size();) {
            size_t i = order[k];
            reports[i] = verify_entry(catalog, *todo[i], N);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    VerifySummary s;
    s.reports = std::move(reports);
    for (const auto& r : s.reports) {
        s.pass = s.pass && r.pass;
        s.checks_run += r.checks.size();
        for (const auto& c : r.checks) s.checks_failed += c.pass ? 0 : 1;
    }
    return s;
}

}  // namespace lgforge
