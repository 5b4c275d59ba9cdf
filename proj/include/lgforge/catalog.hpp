/*
 * catalog.hpp
 * -----------
 * Machine-readable catalog of Landau-Ginzburg models with declarative checks
 * and a multi-threaded verification harness.
 *
 * An entry stores its model as expression text in `dim` torus variables and
 * `params.size()` parameters. Every check names a kind and a JSON payload:
 *
 *   exact_equal                  source == expect (or the model of `target`)
 *   period_match                 periods of source and target agree up to a
 *                                constant shift (pinned by "shift" if given)
 *   mutation_chain               running "steps" from source reaches "expect"
 *   parameter_limit_edge         source after "dying"/"subst"/"fibre" == expect
 *   direction_degeneration_edge  f_min/f_max of a divisor direction on a fan
 *   toric_oracle                 model against combinatorial quantum periods
 *
 * A "source" is the model (default), an expression string, or an object
 * {"expr"?, "dying"?, "subst"?, "chain"?, "fibre"?} applied in that order.
 * Failed checks carry a witness: the first degree at which the periods of
 * the computed and the expected polynomial differ.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lgforge/laurent.hpp"

namespace lgforge {

struct Check {
    std::string kind;
    nlohmann::json payload;  // the full check object, including "kind"
};

struct CatalogEntry {
    std::string id;
    std::string name;
    int dim = 3;
    int picard_rank = 1;
    std::string model;
    std::vector<std::string> params;
    bool modulo_constant = false;
    bool geometric_only = false;
    std::optional<int> order;
    std::vector<Check> checks;

    int param_rank() const { return static_cast<int>(params.size()); }
    LaurentPolynomial parsed_model() const;

    static CatalogEntry from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    bool operator==(const CatalogEntry& o) const { return to_json() == o.to_json(); }
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries);

    // Accepts either an array of entries or {"entries": [...]}; empty text
    // yields an empty catalog. Throws CatalogError naming the entry and field.
    static Catalog from_text(const std::string& text);
    static Catalog load_file(const std::string& path);
    static Catalog embedded();
    // The file named by LGFORGE_CATALOG when set, otherwise the embedded data.
    static Catalog load_default();

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& id) const;
    std::vector<const CatalogEntry*> select(const std::string& filter) const;
    nlohmann::json to_json() const;

private:
    std::vector<CatalogEntry> entries_;
};

// Natural ordering of ids ("MM-2.9" before "MM-2.10").
bool id_less(const std::string& a, const std::string& b);
// Glob match when the filter has wildcards; otherwise exact id or id prefix.
bool id_matches(const std::string& filter, const std::string& id, bool exact_exists);

struct CheckResult {
    size_t index = 0;
    std::string kind;
    bool pass = false;
    std::string message;
    std::optional<int> witness_degree;
    nlohmann::json to_json() const;
};

struct EntryReport {
    std::string id;
    bool pass = true;
    bool geometric_only = false;
    double seconds = 0;
    std::vector<CheckResult> checks;
    nlohmann::json to_json(bool with_timing = true) const;
};

struct VerifySummary {
    std::vector<EntryReport> reports;  // sorted by id
    bool pass = true;
    size_t checks_run = 0;
    size_t checks_failed = 0;
    nlohmann::json to_json(bool with_timing = true) const;
};

EntryReport verify_entry(const Catalog& catalog, const CatalogEntry& entry, int N);
VerifySummary verify_all(const Catalog& catalog, int N, const std::string& filter = "",
                         unsigned threads = 0);

}  // namespace lgforge
