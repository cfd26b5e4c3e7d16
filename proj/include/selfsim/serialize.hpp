#pragma once

// Problem and report files. All exact values cross the boundary as strings:
// rationals as "p/q", field elements as polynomials in b like "10+6*b".
// Floats appear only in the numeric layer's distances and tolerances.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "selfsim/decide.hpp"
#include "selfsim/words.hpp"

namespace selfsim {

using nlohmann::json;

// ---------------------------------------------------------------------------
// value expressions: sum of terms  c | c*b | c*b^k | b | b^k

inline AlgebraicNumber parse_value_expr(const std::shared_ptr<const FieldContext>& F,
    const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        fail(Errc::parse_error, "empty value expression");

    std::map<unsigned, Rational> terms;
    std::size_t pos = 0;
    auto parse_uint = [&](const char* what) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == start)
            fail(Errc::parse_error, std::string("expected ") + what + " in value expression '" + text + "'");
        return s.substr(start, pos - start);
    };

    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        Rational coeff(1);
        bool have_coeff = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num = parse_uint("numerator");
            std::string den = "1";
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                den = parse_uint("denominator");
            }
            coeff = parse_rational(num + "/" + den);
            have_coeff = true;
        }
        unsigned exp = 0;
        if (pos < s.size() && s[pos] == 'b') {
            ++pos;
            exp = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exp = static_cast<unsigned>(std::stoul(parse_uint("exponent")));
            }
            if (have_coeff) {
                // consumed the coefficient; a '*' between it and 'b' is optional
            }
        } else if (pos < s.size() && s[pos] == '*') {
            ++pos;
            if (pos >= s.size() || s[pos] != 'b')
                fail(Errc::parse_error, "expected 'b' after '*' in '" + text + "'");
            ++pos;
            exp = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exp = static_cast<unsigned>(std::stoul(parse_uint("exponent")));
            }
        } else if (!have_coeff) {
            fail(Errc::parse_error, "unexpected character in value expression '" + text + "'");
        }
        terms[exp] += sign * coeff;
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
            fail(Errc::parse_error, "expected '+' or '-' in value expression '" + text + "'");
    }

    std::vector<Rational> coeffs;
    for (const auto& [exp, c] : terms) {
        if (coeffs.size() <= exp)
            coeffs.resize(exp + 1, Rational(0));
        coeffs[exp] = c;
    }
    return eval_poly(F, coeffs);
}

inline std::string format_value(const AlgebraicNumber& a) { return a.str(); }

// ---------------------------------------------------------------------------
// problem files

struct ProblemOptions {
    int search_degree = 12;
    std::size_t enum_cap = WordSet::default_enum_cap;
    std::optional<bool> assert_in_bn;
    int depth = 8;
    std::optional<double> tol;
};

struct Problem {
    int schema_version = 1;
    BetaSpec beta;
    std::vector<std::variant<Word, std::string>> translations;
    ProblemOptions options;
};

namespace detail {

inline Rational json_rational(const json& j, const std::string& field)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(static_cast<long>(j.get<long long>()));
    fail(Errc::parse_error, "field '" + field + "' must be an integer or a rational string");
}

inline Integer json_integer(const json& j, const std::string& field)
{
    Rational r = json_rational(j, field);
    if (!is_integer(r))
        fail(Errc::parse_error, "field '" + field + "' must be an integer");
    return numerator(r);
}

} // namespace detail

inline Problem parse_problem(const json& j)
{
    Problem p;
    if (!j.is_object())
        fail(Errc::parse_error, "problem file must be a JSON object");
    p.schema_version = j.value("schema_version", 1);
    if (p.schema_version != 1)
        fail(Errc::parse_error, "unsupported schema_version");
    if (!j.contains("N"))
        fail(Errc::parse_error, "missing field 'N'");
    int N = j.at("N").get<int>();

    if (!j.contains("beta"))
        fail(Errc::parse_error, "missing field 'beta'");
    const json& jb = j.at("beta");
    if (jb.contains("p") && jb.contains("q")) {
        Integer num = detail::json_integer(jb.at("p"), "beta.p");
        Integer den = detail::json_integer(jb.at("q"), "beta.q");
        if (den <= 0)
            fail(Errc::parse_error, "beta.q must be positive");
        Rational b(num, den);
        b.canonicalize();
        p.beta = BetaSpec::rational(b, N);
    } else if (jb.contains("poly") && jb.contains("interval")) {
        qpoly::IPoly poly;
        for (const json& c : jb.at("poly"))
            poly.push_back(detail::json_integer(c, "beta.poly[]"));
        const json& iv = jb.at("interval");
        if (!iv.is_array() || iv.size() != 2)
            fail(Errc::parse_error, "beta.interval must be [lo, hi]");
        p.beta = BetaSpec::root(std::move(poly), detail::json_rational(iv[0], "beta.interval[0]"),
            detail::json_rational(iv[1], "beta.interval[1]"), N);
    } else {
        fail(Errc::parse_error, "beta needs either {p,q} or {poly,interval}");
    }

    for (const json& jt : j.value("translations", json::array())) {
        if (jt.contains("digits")) {
            Word w;
            for (const json& d : jt.at("digits"))
                w.push_back(d.get<int>());
            p.translations.emplace_back(std::move(w));
        } else if (jt.contains("value")) {
            p.translations.emplace_back(jt.at("value").get<std::string>());
        } else {
            fail(Errc::parse_error, "each translation needs 'digits' or 'value'");
        }
    }

    if (j.contains("options")) {
        const json& jo = j.at("options");
        p.options.search_degree = jo.value("search_degree", p.options.search_degree);
        if (jo.contains("enum_cap"))
            p.options.enum_cap = jo.at("enum_cap").get<std::size_t>();
        if (jo.contains("assert_in_bn"))
            p.options.assert_in_bn = jo.at("assert_in_bn").get<bool>();
        p.options.depth = jo.value("depth", p.options.depth);
        if (jo.contains("tol"))
            p.options.tol = jo.at("tol").get<double>();
    }
    return p;
}

inline Problem load_problem(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(Errc::parse_error, "cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(Errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
    }
    return parse_problem(j);
}

// Turns the parsed translation entries (digit words or value expressions)
// into exact values in ascending order of appearance.
inline std::vector<AlgebraicNumber> resolve_translations(
    const std::shared_ptr<const FieldContext>& F, const Problem& p)
{
    std::vector<AlgebraicNumber> values;
    AlgebraicNumber beta_inv = F->beta().inverse();
    for (const auto& entry : p.translations) {
        if (std::holds_alternative<Word>(entry)) {
            const Word& w = std::get<Word>(entry);
            if (w.empty())
                fail(Errc::parse_error, "translation digit word is empty");
            values.push_back(value_of_word(F, w) * beta_inv.pow(static_cast<unsigned>(w.size())));
        } else {
            values.push_back(parse_value_expr(F, std::get<std::string>(entry)));
        }
    }
    return values;
}

// ---------------------------------------------------------------------------
// report files

struct BranchFile {
    std::string status; // admissible | cycle | not_in_T | skipped
    int failed_index = -1;
    int tau = -1;
    int n0 = -1;
    long v_size = -1;
    long edges = -1;
    std::vector<Word> vertices;
    std::vector<Word> cycle;
    int longest_path = -1;
    int witness_level = -1;

    friend bool operator==(const BranchFile&, const BranchFile&) = default;
};

struct WitnessMapFile {
    Word word;
    int j = 0;
    bool reflected = false;
    std::string ratio;
    std::string offset;

    friend bool operator==(const WitnessMapFile&, const WitnessMapFile&) = default;
};

struct WitnessFile {
    int level = 0;
    std::vector<Word> I1, I2;
    std::vector<WitnessMapFile> maps;

    friend bool operator==(const WitnessFile&, const WitnessFile&) = default;
};

struct ReportFile {
    int schema_version = 1;
    std::string verdict;
    std::string branch;
    std::string bn_verdict;
    std::string bn_provenance;
    std::vector<std::string> bn_witness;
    int bn_search_degree = 0;
    int vartheta = -1;
    BranchFile direct, conjugate;
    std::optional<WitnessFile> witness;
    std::map<std::string, double> timings_ms;

    friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::SelfSimilar: return "SelfSimilar";
    case Verdict::NotSelfSimilar: return "NotSelfSimilar";
    case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

inline const char* branch_name(BranchUsed b)
{
    switch (b) {
    case BranchUsed::direct: return "direct";
    case BranchUsed::conjugate: return "conjugate";
    case BranchUsed::both_failed_T: return "both_failed_T";
    case BranchUsed::neither_admissible: return "neither_admissible";
    case BranchUsed::unresolved: return "unresolved";
    }
    return "unresolved";
}

inline const char* bn_verdict_name(BnVerdict v)
{
    switch (v) {
    case BnVerdict::InBN: return "InBN";
    case BnVerdict::NotInBN: return "NotInBN";
    case BnVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

inline const char* bn_provenance_name(BnProvenance p)
{
    switch (p) {
    case BnProvenance::rule_small_beta: return "rule_small_beta";
    case BnProvenance::rule_rational_denominator: return "rule_rational_denominator";
    case BnProvenance::relation_search: return "relation_search";
    case BnProvenance::user_assertion: return "user_assertion";
    }
    return "relation_search";
}

inline const char* branch_status_name(BranchOutcome::Status s)
{
    switch (s) {
    case BranchOutcome::Status::admissible: return "admissible";
    case BranchOutcome::Status::cycle: return "cycle";
    case BranchOutcome::Status::not_in_T: return "not_in_T";
    case BranchOutcome::Status::skipped: return "skipped";
    }
    return "skipped";
}

inline BranchFile make_branch_file(const BranchOutcome& b)
{
    BranchFile f;
    f.status = branch_status_name(b.status);
    f.failed_index = b.failed_index;
    f.tau = b.tau;
    f.n0 = b.n0;
    f.v_size = b.v_size;
    f.edges = b.edges;
    f.vertices = b.vertices;
    f.cycle = b.cycle;
    f.longest_path = b.longest_path;
    f.witness_level = b.witness_level;
    return f;
}

inline ReportFile make_report_file(const DecisionReport& rep, double total_ms)
{
    ReportFile f;
    f.verdict = verdict_name(rep.verdict);
    f.branch = branch_name(rep.branch);
    f.bn_verdict = bn_verdict_name(rep.bn.verdict);
    f.bn_provenance = bn_provenance_name(rep.bn.provenance);
    for (const Integer& c : rep.bn.witness)
        f.bn_witness.push_back(to_string(c));
    f.bn_search_degree = rep.bn.search_degree;
    f.vartheta = rep.vartheta;
    f.direct = make_branch_file(rep.direct);
    f.conjugate = make_branch_file(rep.conj);
    if (rep.witness) {
        WitnessFile w;
        w.level = rep.witness->level;
        w.I1 = rep.witness->I1;
        w.I2 = rep.witness->I2;
        for (const WitnessMap& m : rep.witness->maps) {
            WitnessMapFile mf;
            mf.word = m.word;
            mf.j = m.j;
            mf.reflected = m.reflected;
            mf.ratio = format_value(m.ratio);
            mf.offset = format_value(m.offset);
            w.maps.push_back(std::move(mf));
        }
        f.witness = std::move(w);
    }
    f.timings_ms["total"] = total_ms;
    return f;
}

inline void to_json(json& j, const BranchFile& b)
{
    j = json {
        { "status", b.status },
        { "failed_index", b.failed_index },
        { "tau", b.tau },
        { "n0", b.n0 },
        { "v_size", b.v_size },
        { "edges", b.edges },
        { "vertices", b.vertices },
        { "cycle", b.cycle },
        { "longest_path", b.longest_path },
        { "witness_level", b.witness_level },
    };
}

inline void from_json(const json& j, BranchFile& b)
{
    j.at("status").get_to(b.status);
    j.at("failed_index").get_to(b.failed_index);
    j.at("tau").get_to(b.tau);
    j.at("n0").get_to(b.n0);
    j.at("v_size").get_to(b.v_size);
    j.at("edges").get_to(b.edges);
    j.at("vertices").get_to(b.vertices);
    j.at("cycle").get_to(b.cycle);
    j.at("longest_path").get_to(b.longest_path);
    j.at("witness_level").get_to(b.witness_level);
}

inline void to_json(json& j, const WitnessMapFile& m)
{
    j = json {
        { "word", m.word },
        { "j", m.j },
        { "reflected", m.reflected },
        { "ratio", m.ratio },
        { "offset", m.offset },
    };
}

inline void from_json(const json& j, WitnessMapFile& m)
{
    j.at("word").get_to(m.word);
    j.at("j").get_to(m.j);
    j.at("reflected").get_to(m.reflected);
    j.at("ratio").get_to(m.ratio);
    j.at("offset").get_to(m.offset);
}

inline void to_json(json& j, const WitnessFile& w)
{
    j = json {
        { "level", w.level },
        { "I1", w.I1 },
        { "I2", w.I2 },
        { "maps", w.maps },
    };
}

inline void from_json(const json& j, WitnessFile& w)
{
    j.at("level").get_to(w.level);
    j.at("I1").get_to(w.I1);
    j.at("I2").get_to(w.I2);
    j.at("maps").get_to(w.maps);
}

inline void to_json(json& j, const ReportFile& f)
{
    j = json {
        { "schema_version", f.schema_version },
        { "verdict", f.verdict },
        { "branch", f.branch },
        { "bn",
            json { { "verdict", f.bn_verdict }, { "provenance", f.bn_provenance },
                { "witness", f.bn_witness }, { "search_degree", f.bn_search_degree } } },
        { "vartheta", f.vartheta },
        { "branches", json { { "direct", f.direct }, { "conjugate", f.conjugate } } },
        { "witness", f.witness ? json(*f.witness) : json(nullptr) },
        { "timings_ms", f.timings_ms },
    };
}

inline void from_json(const json& j, ReportFile& f)
{
    j.at("schema_version").get_to(f.schema_version);
    j.at("verdict").get_to(f.verdict);
    j.at("branch").get_to(f.branch);
    const json& bn = j.at("bn");
    bn.at("verdict").get_to(f.bn_verdict);
    bn.at("provenance").get_to(f.bn_provenance);
    bn.at("witness").get_to(f.bn_witness);
    bn.at("search_degree").get_to(f.bn_search_degree);
    j.at("vartheta").get_to(f.vartheta);
    j.at("branches").at("direct").get_to(f.direct);
    j.at("branches").at("conjugate").get_to(f.conjugate);
    if (j.at("witness").is_null())
        f.witness.reset();
    else {
        WitnessFile w;
        j.at("witness").get_to(w);
        f.witness = std::move(w);
    }
    j.at("timings_ms").get_to(f.timings_ms);
}

inline ReportFile parse_report(const json& j)
{
    ReportFile f;
    from_json(j, f);
    return f;
}

} // namespace selfsim
