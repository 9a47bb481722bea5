#pragma once

// Command implementations behind the `rigidity` CLI. Each command returns a
// CommandResult whose JSON form is described by docs/result.schema.json.

#include <chrono>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "abelian.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "matrix_rings.hpp"
#include "mult_structure.hpp"
#include "scaled_rings.hpp"

namespace rigidity {

using json = nlohmann::ordered_json;

enum class Status { ok, rejected, error };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::ok: return "ok";
    case Status::rejected: return "rejected";
    default: return "error";
    }
}

struct CommandResult {
    std::string command;
    json parameters = json::object();
    json payload = json::object();
    Status status = Status::ok;
    int exit_code = 0;
    std::string message;
    std::chrono::milliseconds elapsed{0};

    /// Timing is left out unless asked for, so that identical runs print identical bytes.
    json to_json(bool with_timing = false) const
    {
        json j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["status"] = to_string(status);
        if (status == Status::error) {
            j["error"] = {{"exit_code", exit_code}, {"message", message}};
        } else {
            j["result"] = payload;
        }
        if (with_timing) j["elapsed_ms"] = elapsed.count();
        return j;
    }
};

// ---------------------------------------------------------------------------
// JSON rendering of library values

inline json to_json(const GroupElement& g) { return json(std::vector<integer>(g.coords().begin(), g.coords().end())); }

inline json to_json(const MatrixElement& A) { return json(A.rows()); }

inline json to_json(const StructureConstants& C)
{
    json rows = json::array();
    for (std::size_t i = 0; i < C.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < C.rank(); ++j) row.push_back(to_json(C.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Full |G| x |G| table with entries rendered as coordinate vectors.
inline json full_table_json(const StructureConstants& C)
{
    const auto elements = all_elements(C.group());
    json rows = json::array();
    for (const auto& g : elements) {
        json row = json::array();
        for (const auto& h : elements) row.push_back(to_json(eval(C, g, h)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const RigidityReport& r)
{
    json j;
    j["group"] = std::vector<integer>(r.group.moduli().begin(), r.group.moduli().end());
    j["order"] = r.group.order();
    j["search_space"] = r.search_space;
    j["total"] = r.total;
    j["commutative_count"] = r.commutative_count;
    j["unital_count"] = r.unital_count;
    j["unital_scales"] = r.group.is_cyclic() ? json(r.unital_scales) : json(nullptr);
    j["scaled_form_all"] = r.scaled_form_all ? json(*r.scaled_form_all) : json(nullptr);
    if (r.non_rigidity_witness) {
        const auto& [first, second] = *r.non_rigidity_witness;
        j["non_rigidity_witness"] = {
            {"first", {{"constants", to_json(first)}, {"table", full_table_json(first)}}},
            {"second", {{"constants", to_json(second)}, {"table", full_table_json(second)}}},
        };
    } else {
        j["non_rigidity_witness"] = nullptr;
    }
    return j;
}

inline json to_json(const MatrixAxiomSummary& s)
{
    return {
        {"samples", s.samples},
        {"associative", s.associative},
        {"left_distributive", s.left_distributive},
        {"right_distributive", s.right_distributive},
        {"commutative_on_samples", s.commutative},
        {"unit_verified", s.unit_verified},
    };
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

template <typename F>
CommandResult run_command(std::string name, json parameters, F&& body)
{
    CommandResult result;
    result.command = std::move(name);
    result.parameters = std::move(parameters);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(result);
    } catch (const std::exception& e) {
        result.status = Status::error;
        result.exit_code = exit_code(e);
        result.message = e.what();
        result.payload = json::object();
    }
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return result;
}

inline void reject(CommandResult& r, std::string why)
{
    r.status = Status::rejected;
    r.exit_code = 1;
    r.message = std::move(why);
}

} // namespace detail

struct EnumerateOptions {
    std::string group;
    SearchConfig search;
};

inline CommandResult cmd_enumerate(const EnumerateOptions& opt)
{
    json params = {{"group", opt.group}, {"budget", opt.search.budget}};
    return detail::run_command("enumerate", std::move(params), [&](CommandResult& r) {
        const GroupSpec G = GroupSpec::parse(opt.group);
        const RigidityReport report = rigidity_report(G, opt.search);
        r.payload = to_json(report);
    });
}

struct VerifyScaledOptions {
    integer a = 1;
    integer bound = 1000;
    std::size_t samples = 10'000;
    integer max_bound = 10'000;
};

inline CommandResult cmd_verify_scaled(const VerifyScaledOptions& opt)
{
    json params = {{"a", opt.a}, {"bound", opt.bound}, {"samples", opt.samples}};
    return detail::run_command("verify-scaled", std::move(params), [&](CommandResult& r) {
        const IntegerWindow window(opt.bound);
        if (opt.bound > opt.max_bound)
            throw capacity_error("bound " + std::to_string(opt.bound) + " exceeds the exhaustive-pair cap " +
                                 std::to_string(opt.max_bound));
        const auto identities = check_scaled_identities(opt.a, window, opt.samples);
        const IntMul star = make_scaled(opt.a);
        const auto form = verify_scaled_form(star, window);
        const auto closed = unit_of_scaled(opt.a);
        const auto scanned = find_unit_in_window(star, window);

        json& p = r.payload;
        p["identities"] = {
            {"samples", identities.samples},
            {"associative", identities.associative},
            {"distributive", identities.distributive},
            {"commutative", identities.commutative},
            {"counterexample", identities.counterexample ? json(std::vector<integer>{identities.counterexample->n,
                                                                                     identities.counterexample->m,
                                                                                     identities.counterexample->k})
                                                         : json(nullptr)},
        };
        p["recovered_scale"] = form.a;
        p["scaled_form"] = form.holds();
        p["unit"] = closed ? json(*closed) : json(nullptr);
        p["unit_window_scan"] = scanned ? json(*scanned) : json(nullptr);
        p["unit_agrees"] = closed == scanned;
        const bool pass = identities.holds() && form.holds() && form.a == opt.a && closed == scanned;
        p["pass"] = pass;
        if (opt.a == 1)
            p["note"] = "usual ring";
        else if (opt.a == -1)
            p["note"] = "alternate ring";
        else if (opt.a == 0)
            p["note"] = "zero ring";
        else
            p["note"] = nullptr;
        if (!pass) detail::reject(r, "scaled multiplication failed verification");
    });
}

struct ClassifyOptions {
    integer modulus = 2;
    SearchConfig search;
};

inline CommandResult cmd_classify(const ClassifyOptions& opt)
{
    json params = {{"modulus", opt.modulus}};
    return detail::run_command("classify", std::move(params), [&](CommandResult& r) {
        const GroupSpec G = GroupSpec::cyclic(opt.modulus);
        const auto rows = classify_cyclic(opt.modulus, opt.search);
        json scales = json::array();
        std::vector<integer> unital;
        for (const auto& c : rows) {
            scales.push_back({{"a", c.a},
                              {"is_minus_one", c.is_minus_one},
                              {"unital", c.unit.has_value()},
                              {"unit", c.unit ? json(*c.unit) : json(nullptr)}});
            if (c.unit) unital.push_back(c.a);
        }
        json& p = r.payload;
        p["modulus"] = opt.modulus;
        p["total"] = rows.size();
        p["scales"] = std::move(scales);
        p["unital"] = unital;
        p["scaled_form_all"] = true;
        if (opt.modulus <= opt.search.full_table_cap) {
            std::set<FullTable> expanded;
            for (const auto& ring : enumerate_multiplications(G, opt.search))
                expanded.insert(multiplication_table(ring.mult()));
            const bool agree = full_table_oracle(opt.modulus, opt.search.full_table_cap) == expanded;
            p["oracle"] = agree ? "agree" : "disagree";
            if (!agree) detail::reject(r, "full-table oracle disagrees with the structure-constant enumeration");
        }
    });
}

struct MatrixDemoOptions {
    integer n = 2;
    integer modulus = 7;
    std::size_t samples = 1000;
    integer exhaustive_cap = 4096;
};

inline CommandResult cmd_matrix_demo(const MatrixDemoOptions& opt)
{
    json params = {{"n", opt.n}, {"modulus", opt.modulus}, {"samples", opt.samples}};
    return detail::run_command("matrix-demo", std::move(params), [&](CommandResult& r) {
        if (opt.n < 1) throw usage_error("matrix dimension must be ≥ 1 (got " + std::to_string(opt.n) + ")");
        if (opt.modulus < 2) throw usage_error("modulus must be ≥ 2 (got " + std::to_string(opt.modulus) + ")");
        if (opt.n > 64) throw capacity_error("matrix dimension above 64");
        const auto n = static_cast<std::size_t>(opt.n);
        const integer m = opt.modulus;
        const auto id = unit_matrix(MatrixProduct::standard, n, m);
        const auto ones = unit_matrix(MatrixProduct::hadamard, n, m);

        json& p = r.payload;
        p["n"] = opt.n;
        p["modulus"] = m;
        p["units"] = {{"standard", to_json(id)}, {"hadamard", to_json(ones)}};
        p["units_differ"] = id != ones;
        if (auto w = noncommutativity_witness(MatrixProduct::standard, n, m)) {
            p["noncommutativity_witness"] = {
                {"A", to_json(w->first)},
                {"B", to_json(w->second)},
                {"AB", to_json(mat_mul_standard(w->first, w->second))},
                {"BA", to_json(mat_mul_standard(w->second, w->first))},
            };
        } else {
            p["noncommutativity_witness"] = nullptr;
        }
        p["axioms"] = {
            {"standard", to_json(sample_ring_axioms(MatrixProduct::standard, n, m, opt.samples))},
            {"hadamard", to_json(sample_ring_axioms(MatrixProduct::hadamard, n, m, opt.samples))},
        };

        // Exhaustive identity count, only when the carrier is small.
        integer carrier = 1;
        for (std::size_t i = 0; i < n * n && carrier <= opt.exhaustive_cap; ++i) carrier *= m;
        if (carrier <= opt.exhaustive_cap) {
            p["unit_count_exhaustive"] = {
                {"standard", find_units_exhaustive(MatrixProduct::standard, n, m).size()},
                {"hadamard", find_units_exhaustive(MatrixProduct::hadamard, n, m).size()},
            };
        } else {
            p["unit_count_exhaustive"] = nullptr;
        }
        p["note"] = n == 1 ? json("modes coincide at n=1") : json(nullptr);
    });
}

struct ScaledUnitalityOptions {
    integer modulus = 3;
};

inline CommandResult cmd_scaled_unitality(const ScaledUnitalityOptions& opt)
{
    json params = {{"modulus", opt.modulus}};
    return detail::run_command("lemma23", std::move(params), [&](CommandResult& r) {
        const BaseRing R = BaseRing::integers_mod(opt.modulus);
        const auto witness = pm1_unit_witness(R);
        json& p = r.payload;
        p["modulus"] = opt.modulus;
        p["pm1_unit_property"] = !witness;
        p["witness"] = witness ? json{{"a", (witness->first)[0]}, {"u", (witness->second)[0]}} : json(nullptr);

        std::vector<ScaledUnitalityRow> rows;
        if (witness) {
            p["mode"] = "diagnostic";
            rows = scaled_unitality_sweep(R);
        } else {
            p["mode"] = "verified";
            rows = check_unital_iff_pm1(R).rows;
        }
        json table = json::array();
        std::vector<integer> unital;
        bool consistent = true;
        for (const auto& row : rows) {
            table.push_back({{"a", row.a[0]},
                             {"is_pm1", row.is_pm1},
                             {"unital", row.unital()},
                             {"unit", row.unit ? json((*row.unit)[0]) : json(nullptr)}});
            if (row.unital()) unital.push_back(row.a[0]);
            consistent &= row.consistent();
        }
        p["rows"] = std::move(table);
        p["unital_scales"] = unital;
        p["unital_iff_pm1"] = consistent;
        if (!witness && !consistent) detail::reject(r, "scaled ring unitality departs from a = ±1");
    });
}

// ---------------------------------------------------------------------------
// Text rendering

namespace detail {
inline void render_text(std::ostream& os, const json& j, const std::string& prefix)
{
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) render_text(os, value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array() && !j.empty() && j.front().is_object()) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}
} // namespace detail

inline std::string to_text(const CommandResult& r, bool with_timing = false)
{
    std::ostringstream os;
    detail::render_text(os, r.to_json(with_timing), "");
    return os.str();
}

} // namespace rigidity
