#pragma once

// Command-line front end. Every subcommand parses its flags, delegates to the
// library and renders the result as JSON (default) or plain text.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srone/classify.hpp"
#include "srone/error.hpp"
#include "srone/intmat.hpp"
#include "srone/ring_spec.hpp"
#include "srone/stable_range.hpp"
#include "srone/suite.hpp"

namespace srone::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kFail = 1, kConfig = 2 };

/// Element flag: a literal, or "#k" for the element with index k.
inline Element parse_element(const Ring& R, const std::string& text) {
    if (!text.empty() && text[0] == '#') {
        std::size_t pos = 0;
        unsigned long long k = 0;
        try {
            k = std::stoull(text.substr(1), &pos);
        } catch (const std::exception&) {
            throw ParseError("bad element index '" + text + "'", 1);
        }
        if (pos + 1 != text.size()) throw ParseError("bad element index '" + text + "'", pos + 1);
        if (k >= R.order()) throw PreconditionError("element index " + text + " out of range for " + R.id());
        return Element(k);
    }
    return R.parse(text);
}

inline IntMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("matrix file '" + path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("rows")) throw ConfigError("matrix file needs \"n\" and \"rows\"");
    std::size_t n = j["n"].get<std::size_t>();
    const Json& rows = j["rows"];
    if (!rows.is_array() || rows.size() != n) throw ConfigError("matrix file: expected " + std::to_string(n) + " rows");
    std::vector<std::vector<Integer>> out;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n) throw ConfigError("matrix file: every row needs " + std::to_string(n) + " entries");
        std::vector<Integer> row;
        for (const auto& x : r) {
            if (x.is_string()) {
                try {
                    row.emplace_back(x.get<std::string>());
                } catch (const std::exception&) {
                    throw ConfigError("matrix file: bad entry '" + x.get<std::string>() + "'");
                }
            } else if (x.is_number_integer()) {
                row.emplace_back(x.get<std::int64_t>());
            } else {
                throw ConfigError("matrix file: entries must be decimal strings");
            }
        }
        out.push_back(std::move(row));
    }
    return IntMatrix::from_rows(out);
}

inline Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.n(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return Json{{"n", m.n()}, {"rows", rows}};
}

template <class T, class Fmt>
Json certificate_json(const Certificate<T>& c, Fmt fmt) {
    Json j;
    j["mode"] = to_string(c.mode);
    j["side"] = to_string(c.side);
    j["variant"] = to_string(c.variant);
    j["a"] = fmt(c.a);
    j["t-or-x"] = fmt(c.t_or_x);
    j["b"] = fmt(c.b);
    j["u"] = fmt(c.u);
    j["u_inv"] = fmt(c.u_inv);
    j["path"] = c.path;
    return j;
}

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// key: value lines for objects, a table for report arrays.
inline void render_text(std::ostream& out, const Json& j) {
    if (j.is_array()) {
        std::size_t wt = 7, wr = 4, wo = 7;
        for (const auto& r : j) {
            wt = std::max(wt, r["theorem"].get<std::string>().size());
            wr = std::max(wr, r["ring"].get<std::string>().size());
            wo = std::max(wo, r["outcome"].get<std::string>().size());
        }
        out << std::left << std::setw(int(wt)) << "theorem" << "  " << std::setw(int(wr)) << "ring" << "  "
            << std::setw(int(wo)) << "outcome" << "  " << "instances\n";
        for (const auto& r : j) {
            out << std::setw(int(wt)) << r["theorem"].get<std::string>() << "  " << std::setw(int(wr))
                << r["ring"].get<std::string>() << "  " << std::setw(int(wo)) << r["outcome"].get<std::string>() << "  "
                << r["instances"].get<std::uint64_t>() << "\n";
            if (r["outcome"] == "fail" && r["counterexample"].is_object())
                for (const auto& [k, v] : r["counterexample"].items()) out << "    " << k << " = " << scalar_text(v) << "\n";
        }
        return;
    }
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_array()) {
                out << k << ":";
                for (const auto& x : v) out << " " << scalar_text(x);
                out << "\n";
            } else if (v.is_object()) {
                out << k << ":\n";
                for (const auto& [k2, v2] : v.items()) out << "  " << k2 << ": " << scalar_text(v2) << "\n";
            } else {
                out << k << ": " << scalar_text(v) << "\n";
            }
        }
        return;
    }
    out << scalar_text(j) << "\n";
}

/// Splits on commas outside parentheses and brackets.
inline std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct Emitter {
    std::ostream& out;
    std::string format = "json";

    void operator()(const Json& j) const {
        if (format == "text")
            render_text(out, j);
        else
            out << j.dump(2) << "\n";
    }
};

inline Json flags_json(const ClassificationFlags& f) {
    return Json{{"unit", f.unit},
                {"idempotent", f.idempotent},
                {"nilpotent", f.nilpotent},
                {"nilpotent_index", f.nilpotent_index},
                {"regular", f.regular},
                {"unit_regular", f.unit_regular},
                {"strongly_regular", f.strongly_regular},
                {"strongly_nilpotent", f.strongly_nilpotent},
                {"quasi_nilpotent", f.quasi_nilpotent},
                {"suitable", f.suitable},
                {"clean", f.clean},
                {"strongly_pi_regular", f.strongly_pi_regular},
                {"in_radical", f.in_radical}};
}

inline Json predicates_json(const RingPredicates& p) {
    return Json{{"exchange", p.exchange},   {"ic", p.ic},
                {"abelian", p.abelian},     {"reg_closed", p.reg_closed},
                {"stable_range_one", p.stable_range_one}, {"clean_ring", p.clean_ring}};
}

inline Json elements_json(const Ring& R, const std::vector<Element>& xs) {
    Json a = Json::array();
    for (Element x : xs) a.push_back(R.format(x));
    return a;
}

/// Runs one command line. argv[0] is the program name.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Element-wise stable range one: decide, certify and verify."};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    // ring
    std::string ring_spec;
    bool list_elements = false;
    auto* ring_cmd = app.add_subcommand("ring", "Construct a ring and describe it");
    ring_cmd->add_option("spec", ring_spec, "Ring spec, e.g. M(2,Z/4)")->required();
    ring_cmd->add_flag("--elements", list_elements, "List every element");

    // classify
    std::string element;
    auto* classify_cmd = app.add_subcommand("classify", "Classify an element, or the ring without --element");
    classify_cmd->add_option("spec", ring_spec)->required();
    classify_cmd->add_option("--element", element, "Literal or #index");

    // check
    std::string what, side = "right", variant = "full";
    auto* check_cmd = app.add_subcommand("check", "Decide sr(a) = 1 or the ring predicates");
    check_cmd->add_option("what", what)->required()->check(CLI::IsMember({"sr", "predicates"}));
    check_cmd->add_option("spec", ring_spec)->required();
    check_cmd->add_option("--element", element, "Literal or #index");
    check_cmd->add_option("--side", side)->check(CLI::IsMember({"right", "left"}));
    check_cmd->add_option("--variant", variant)->check(CLI::IsMember({"full", "unit", "idempotent", "regular", "square"}));

    // witness
    std::string x_text, t_text;
    auto* witness_cmd = app.add_subcommand("witness", "Produce a certificate for a against x (form3) or t (pair)");
    witness_cmd->add_option("spec", ring_spec)->required();
    witness_cmd->add_option("--element", element)->required();
    auto* x_opt = witness_cmd->add_option("--x", x_text, "form3: u = a + b - axb");
    auto* t_opt = witness_cmd->add_option("--t", t_text, "pair: aR + tR = R, u = a + tb");
    x_opt->excludes(t_opt);
    witness_cmd->add_option("--side", side)->check(CLI::IsMember({"right", "left"}));
    witness_cmd->add_option("--variant", variant)->check(CLI::IsMember({"full", "unit", "idempotent", "regular", "square"}));

    // intmat
    std::string matrix_path, x_path;
    auto* intmat_cmd = app.add_subcommand("intmat", "Integer matrices");
    intmat_cmd->require_subcommand(1);
    auto* im_check = intmat_cmd->add_subcommand("check", "Decide sr(A) = 1 in M(n,Z)");
    im_check->add_option("--matrix", matrix_path)->required();
    auto* im_witness = intmat_cmd->add_subcommand("witness", "B with A + B - AXB unimodular");
    im_witness->add_option("--matrix", matrix_path)->required();
    im_witness->add_option("--x", x_path)->required();
    auto* im_audit = intmat_cmd->add_subcommand("audit-6-12", "Audit the 4x4 block example and its transposes");

    // verify
    std::vector<std::string> theorems;
    std::string find_kind;
    bool deterministic = false;
    unsigned threads = 0;
    std::uint64_t budget = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Run theorem checks over rings");
    auto* th_opt = verify_cmd->add_option("--theorems", theorems, "Ids, families like T2.*, or sjl/prop36/circle")->delimiter(',');
    std::string rings_text;
    verify_cmd->add_option("--rings", rings_text, "Comma-separated ring specs or 'default'");
    auto* find_opt = verify_cmd->add_option("--find", find_kind, "Counterexample search")
                         ->check(CLI::IsMember(counterexample_kinds()));
    find_opt->excludes(th_opt);
    verify_cmd->add_flag("--deterministic", deterministic, "Zero the timing field");
    verify_cmd->add_option("--threads", threads);
    verify_cmd->add_option("--budget", budget, "Instances per cell; overrides SRONE_BUDGET");

    for (auto* sub : {ring_cmd, classify_cmd, check_cmd, witness_cmd, intmat_cmd, im_check, im_witness, im_audit, verify_cmd})
        sub->fallthrough();

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    }

    Emitter emit{out, format};
    try {
        if (ring_cmd->parsed()) {
            RingPtr R = construct_ring(ring_spec);
            Json j;
            j["id"] = R->id();
            j["order"] = R->order();
            j["commutative"] = R->commutative();
            j["units"] = R->units().size();
            j["idempotents"] = R->idempotents().size();
            j["involution"] = R->has_involution();
            if (list_elements) {
                std::vector<Element> all(R->order());
                for (Element a = 0; a < R->order(); ++a) all[a] = a;
                j["elements"] = elements_json(*R, all);
            }
            emit(j);
            return kPass;
        }
        if (classify_cmd->parsed()) {
            RingPtr R = construct_ring(ring_spec);
            if (element.empty()) {
                emit(predicates_json(ring_predicates(R)));
                return kPass;
            }
            Element a = parse_element(*R, element);
            Json j;
            j["element"] = R->format(a);
            Json flags = flags_json(classify(R, a));
            for (auto& [k, v] : flags.items()) j[k] = v;
            emit(j);
            return kPass;
        }
        if (check_cmd->parsed()) {
            RingPtr R = construct_ring(ring_spec);
            if (what == "predicates") {
                if (!element.empty()) throw ConfigError("check predicates takes no --element");
                emit(predicates_json(ring_predicates(R)));
                return kPass;
            }
            if (element.empty()) throw ConfigError("check sr needs --element");
            Element a = parse_element(*R, element);
            Variant var = parse_variant(variant);
            Json j;
            j["sr"] = has_sr1(R, a, parse_side(side), var);
            j["side"] = side;
            if (var != Variant::full) j["variant"] = variant;
            emit(j);
            return kPass;
        }
        if (witness_cmd->parsed()) {
            RingPtr R = construct_ring(ring_spec);
            Element a = parse_element(*R, element);
            auto fmt = [&](Element e) { return R->format(e); };
            std::optional<FiniteCertificate> cert;
            if (!t_text.empty()) {
                if (side != "right" || variant != "full") throw ConfigError("--t takes the right full form only");
                cert = pair_witness(R, a, parse_element(*R, t_text));
                if (!cert) {
                    emit(Json{{"sr", has_sr1(R, a)}, {"certificate", nullptr}, {"reason", "aR + tR != R or sr(a) != 1"}});
                    return kFail;
                }
            } else {
                if (x_text.empty()) throw ConfigError("witness needs --x or --t");
                cert = sr1_witness(R, a, parse_element(*R, x_text), parse_side(side), parse_variant(variant));
                if (!cert) {
                    emit(Json{{"sr", false}, {"certificate", nullptr}});
                    return kFail;
                }
            }
            emit(Json{{"sr", true}, {"certificate", certificate_json(*cert, fmt)}});
            return kPass;
        }
        if (intmat_cmd->parsed()) {
            if (im_check->parsed()) {
                IntVerdict v = sr1_int(read_matrix_file(matrix_path));
                Json j;
                j["sr"] = v.sr ? "yes" : "no";
                j["det"] = v.det.str();
                if (v.refutation)
                    j["refutation"] = Json{{"d", v.refutation->d.str()},
                                           {"n", v.refutation->n},
                                           {"modulus", v.refutation->modulus.str()},
                                           {"residue", v.refutation->residue.str()}};
                emit(j);
                return kPass;
            }
            if (im_witness->parsed()) {
                IntMatrix A = read_matrix_file(matrix_path), X = read_matrix_file(x_path);
                if (A.n() != X.n()) throw ConfigError("--matrix and --x differ in size");
                if (!sr1_int(A).sr) {
                    emit(Json{{"sr", "no"}, {"certificate", nullptr}});
                    return kFail;
                }
                auto fmt = [](const IntMatrix& m) { return m.to_string(); };
                emit(Json{{"sr", "yes"}, {"certificate", certificate_json(int_certificate(A, X), fmt)}});
                return kPass;
            }
            if (im_audit->parsed()) {
                BlockAudit au = audit_block_example();
                auto entry = [](const BlockAuditEntry& e) {
                    return Json{{"name", e.name},
                                {"matrix", e.matrix.to_string()},
                                {"det", e.det.str()},
                                {"det_verdict", e.det_verdict ? "yes" : "no"},
                                {"schur_complement", e.schur.to_string()},
                                {"schur_det", e.schur_det.str()},
                                {"schur_verdict", e.schur_verdict ? "yes" : "no"}};
                };
                Json j;
                j["entries"] = Json::array({entry(au.m), entry(au.block_t), entry(au.full_t)});
                j["criteria_agree"] = au.criteria_agree;
                j["sr_one"] = au.sr_one;
                j["asserted_sr_m"] = au.asserted_sr_m;
                j["discrepancy"] = au.discrepancy;
                emit(j);
                return au.criteria_agree ? kPass : kFail;
            }
        }
        if (verify_cmd->parsed()) {
            std::uint64_t b = budget ? budget : budget_from_env();
            if (!find_kind.empty()) {
                if (!rings_text.empty()) throw ConfigError("--find picks its own ring");
                CounterexampleResult r = find_counterexamples(find_kind, b);
                Json payload = Json::object();
                for (const auto& [k, v] : r.payload) payload[k] = v;
                emit(Json{{"kind", r.kind},
                          {"ring", r.ring},
                          {"found", r.found},
                          {"verified", r.verified},
                          {"searched", r.searched},
                          {"payload", r.found ? payload : Json(nullptr)}});
                return r.found && r.verified ? kPass : kFail;
            }
            auto registry = select_rings(split_top_level(rings_text));
            SuiteOptions opt;
            opt.budget = b;
            opt.threads = threads;
            auto reports = run_suite(registry, theorems, opt);
            emit(to_json(reports, !deterministic));
            return any_failed(reports) ? kFail : kPass;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run_command(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace srone::cli
