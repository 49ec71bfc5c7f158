#include "psc/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "psc/powersum.hpp"
#include "psc/qp.hpp"
#include "psc/report.hpp"
#include "psc/search.hpp"
#include "psc/structure.hpp"
#include "psc/wpp.hpp"

namespace psc::cli {
namespace {

struct Globals {
    bool json = false;
    bool quiet = false;
    bool strict = false;
    std::uint64_t factor_cap = arith::kDefaultFactorCap;
};

// A report plus its human-readable rendering.
struct Outcome {
    Report report;
    std::string text;
    std::optional<bool> answer;  // boolean commands only
};

std::string join(const std::vector<Nat>& values) {
    std::string s = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += values[i].get_str();
    }
    return s + "}";
}

Nat require_prime_arg(const std::string& text) {
    Nat p = arith::parse_nat(text);
    if (!arith::is_prime(p)) throw std::invalid_argument(p.get_str() + " is not prime");
    return p;
}

Nat require_positive(const std::string& text, const char* what) {
    Nat n = arith::parse_nat(text);
    if (n < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
    return n;
}

Outcome cmd_oracle(const std::string& n_text, const std::string& m_text) {
    const Nat n = require_positive(n_text, "n");
    const Nat m = arith::parse_nat(m_text);
    const Nat residue = powersum::naive_power_sum_mod(n, n, n);
    const bool value = residue == m % n;

    Outcome o;
    o.report.command = "oracle";
    o.report.inputs = {{"n", to_json(n)}, {"m", to_json(m)}};
    o.report.result = {{"value", value}, {"residue", to_json(residue)}};
    o.answer = value;
    o.text = "S_n(n) mod n = " + residue.get_str() + "\n" + (value ? "true" : "false") + "\n";
    return o;
}

Outcome cmd_member(const std::string& n_text, const std::string& m_text, const Globals& g) {
    const Nat n = require_positive(n_text, "n");
    const Nat m = arith::parse_nat(m_text);
    const auto breakdown = powersum::s_n_n_breakdown(n, g.factor_cap);
    bool value = true;
    Json entries = Json::array();
    std::string text;
    for (const auto& e : breakdown.entries) {
        const Nat pe = e.modulus();
        const bool ok = e.residue == m % pe;
        value = value && ok;
        entries.push_back({{"prime", to_json(e.prime)},
                           {"exponent", std::to_string(e.exponent)},
                           {"residue", to_json(e.residue)},
                           {"target", to_json(Nat(m % pe))},
                           {"match", ok}});
        text += "  " + e.prime.get_str() + "^" + std::to_string(e.exponent) + ": S_n(n) = " +
                e.residue.get_str() + ", m = " + Nat(m % pe).get_str() + (ok ? "" : "  (mismatch)") + "\n";
    }
    Outcome o;
    o.report.command = "member";
    o.report.inputs = {{"n", to_json(n)}, {"m", to_json(m)}};
    o.report.result = {{"value", value}, {"breakdown", entries}, {"residue", to_json(breakdown.combine())}};
    o.answer = value;
    o.text = std::string(value ? "true" : "false") + "\n" + text;
    return o;
}

Json qp_json(const qp::QpState& s) {
    Json sizes = Json::array();
    for (auto z : s.sizes) sizes.push_back(std::to_string(z));
    return {{"p", to_json(s.p)},
            {"status", std::string(qp::to_string(s.status))},
            {"iteration", std::to_string(s.iteration)},
            {"primes", to_json(s.primes)},
            {"q_set", to_json(s.q_set())},
            {"sizes", sizes},
            {"caps",
             {{"max_iterations", std::to_string(s.caps.max_iterations)},
              {"max_subset_size", std::to_string(s.caps.max_subset_size)},
              {"max_candidate_bits", std::to_string(s.caps.max_candidate_bits)}}}};
}

std::string qp_text(const qp::QpState& s) {
    return std::string(qp::to_string(s.status)) + " at i=" + std::to_string(s.iteration) + " with " +
           std::to_string(s.primes.size()) + " primes: " +
           (s.primes.size() <= 32 ? join(s.primes) : "(" + std::to_string(s.primes.size()) + " values)") + "\n";
}

Outcome cmd_qp(const std::string& p_text, const qp::Caps& caps) {
    const Nat p = require_prime_arg(p_text);
    const qp::QpState s = qp::compute_qp(p, caps);
    Outcome o;
    o.report.command = "qp";
    o.report.inputs = {{"p", to_json(p)},
                       {"max_iterations", std::to_string(caps.max_iterations)},
                       {"max_subset_size", std::to_string(caps.max_subset_size)},
                       {"max_candidate_bits", std::to_string(caps.max_candidate_bits)}};
    o.report.result = qp_json(s);
    if (!s.stabilized()) {
        o.report.status = Status::Inconclusive;
        o.report.notes.push_back("Q_p construction stopped by a cap before stabilizing");
    }
    o.text = qp_text(s);
    return o;
}

Json mp_json(const structure::MpReport& r) {
    Json elems = Json::array();
    for (const auto& e : r.elements)
        elems.push_back({{"value", to_json(e.value)}, {"part", std::string(structure::to_string(e.part))}});
    const bool proven = r.completeness.kind == structure::Completeness::Kind::ProvenComplete;
    Json out = {{"modulus", to_json(r.modulus)},
                {"elements", elems},
                {"values", to_json(r.values())},
                {"completeness", proven ? "ProvenComplete" : "UpToBound"}};
    if (!proven) out["bound"] = to_json(r.completeness.bound);
    return out;
}

// Drops elements above `bound` and narrows the completeness claim to it.
void apply_bound(structure::MpReport& r, const Nat& bound) {
    std::erase_if(r.elements, [&](const structure::MpElement& e) { return e.value > bound; });
    if (r.completeness.kind == structure::Completeness::Kind::ProvenComplete || bound < r.completeness.bound)
        r.completeness = structure::Completeness::up_to(bound);
}

Outcome cmd_mp(const std::string& p_text, const std::optional<std::string>& bound_text,
               const std::string& route, const qp::Caps& caps, const Globals& g) {
    const Nat p = require_prime_arg(p_text);
    std::optional<Nat> bound;
    if (bound_text) bound = arith::parse_nat(*bound_text);
    if (route != "auto" && route != "structural" && route != "wpp")
        throw std::invalid_argument("unknown route '" + route + "'");

    Outcome o;
    o.report.command = "mp";
    o.report.inputs = {{"p", to_json(p)}, {"route", route}};
    if (bound) o.report.inputs["bound"] = to_json(*bound);

    std::optional<structure::MpReport> report;
    std::string used_route;
    Json qp_info;

    if (route != "wpp") {
        const qp::QpState s = qp::compute_qp(p, caps);
        qp_info = {{"status", std::string(qp::to_string(s.status))},
                   {"iteration", std::to_string(s.iteration)},
                   {"q_set", to_json(s.q_set())}};
        if (s.stabilized()) {
            const Nat k = qp::max_q(s);
            const qp::Verdict v = qp::verify_max(p, s.primes, k, caps.max_subset_size);
            qp_info["max"] = to_json(k);
            qp_info["verify_max"] = std::string(qp::to_string(v));
            if (v == qp::Verdict::Confirmed) {
                const auto np = qp::enumerate_np(s, std::nullopt);
                report = structure::assemble_mp(p, np.values, structure::Completeness::proven(), g.factor_cap);
                used_route = "structural";
            } else {
                o.report.notes.push_back("verify_max did not confirm max Q_p = " + k.get_str() + " (" +
                                         std::string(qp::to_string(v)) + ")");
            }
        } else {
            o.report.notes.push_back("Q_p did not stabilize (" + std::string(qp::to_string(s.status)) +
                                     " at i=" + std::to_string(s.iteration) + ")");
        }
    }
    if (!report && route != "structural") {
        if (route == "auto") o.report.notes.push_back("falling back to the weak primary pseudoperfect route");
        report = wpp::mp_bounded(p, wpp::WppCatalog::known(g.factor_cap), g.factor_cap);
        used_route = "wpp";
    }

    if (!report) {
        o.report.status = Status::Inconclusive;
        o.report.result = {{"route", "structural"}, {"qp", qp_info}};
        o.text = "inconclusive: the structural route could not certify Q_p\n";
        return o;
    }
    if (bound) apply_bound(*report, *bound);
    o.report.result = mp_json(*report);
    o.report.result["route"] = used_route;
    if (!qp_info.is_null()) o.report.result["qp"] = qp_info;

    const bool proven = report->completeness.kind == structure::Completeness::Kind::ProvenComplete;
    o.text = "M_" + p.get_str() + " = " + join(report->values()) + "\n" +
             (proven ? std::string("complete (proven)")
                     : "complete up to " + report->completeness.bound.get_str()) +
             ", route " + used_route + "\n";
    return o;
}

Outcome cmd_np(const std::string& p_text, const std::optional<std::string>& bound_text, const qp::Caps& caps) {
    const Nat p = require_prime_arg(p_text);
    std::optional<Nat> bound;
    if (bound_text) bound = arith::parse_nat(*bound_text);
    const qp::QpState s = qp::compute_qp(p, caps);

    Outcome o;
    o.report.command = "np";
    o.report.inputs = {{"p", to_json(p)}};
    if (bound) o.report.inputs["bound"] = to_json(*bound);

    if (!s.stabilized() && !bound) {
        o.report.status = Status::Inconclusive;
        o.report.result = {{"qp_status", std::string(qp::to_string(s.status))}};
        o.report.notes.push_back("Q_p did not stabilize; pass --bound to enumerate over the partial set");
        o.text = "inconclusive: Q_p did not stabilize\n";
        return o;
    }
    const auto np = qp::enumerate_np(s, bound);
    o.report.result = {{"values", to_json(np.values)},
                       {"count", std::to_string(np.values.size())},
                       {"qp_status", std::string(qp::to_string(s.status))}};
    if (!s.stabilized()) {
        o.report.status = Status::Inconclusive;
        o.report.notes.push_back("Q_p did not stabilize; values use the primes found so far");
    }
    o.text = join(np.values) + "\n";
    return o;
}

Outcome cmd_search(const std::string& lo_text, const std::string& hi_text, const std::string& m_text,
                   unsigned jobs, std::uint64_t block_size, const std::optional<std::string>& checkpoint,
                   const std::optional<std::uint64_t>& max_blocks, const Globals& g) {
    search::Options opt;
    opt.lo = require_positive(lo_text, "lo");
    opt.hi = arith::parse_nat(hi_text);
    opt.m = arith::parse_nat(m_text);
    if (opt.lo > opt.hi) throw std::invalid_argument("lo must be <= hi");
    opt.jobs = jobs;
    opt.block_size = block_size;
    if (checkpoint) opt.checkpoint = *checkpoint;
    opt.max_blocks = max_blocks;
    opt.factor_cap = g.factor_cap;

    const search::Checkpoint st = search::run(opt);

    Outcome o;
    o.report.command = "search";
    o.report.inputs = {{"lo", to_json(opt.lo)},
                       {"hi", to_json(opt.hi)},
                       {"m", to_json(opt.m)},
                       {"block_size", std::to_string(opt.block_size)}};
    o.report.result = {{"found", to_json(st.found)},
                       {"count", std::to_string(st.found.size())},
                       {"complete", st.complete()},
                       {"next_unscanned", to_json(st.next_unscanned)}};
    for (const auto& f : st.failures) o.report.notes.push_back(f.n.get_str() + ": " + f.message);
    if (!st.complete() || !st.failures.empty()) o.report.status = Status::Inconclusive;
    o.text = "found " + std::to_string(st.found.size()) + ": " + join(st.found) + "\n";
    if (!st.complete()) o.text += "stopped before " + st.next_unscanned.get_str() + "\n";
    return o;
}

Json catalog_json(const wpp::WppCatalog& c) {
    Json arr = Json::array();
    for (const auto& e : c.entries)
        arr.push_back({{"value", to_json(e.value)},
                       {"factorization", to_json(e.factorization)},
                       {"n_q", to_json(e.n_q)}});
    return arr;
}

Outcome cmd_wpp_verify(const std::string& n_text, const Globals& g) {
    const Nat n = require_positive(n_text, "n");
    const Factorization fac = arith::factorize(n, g.factor_cap);
    const bool value = wpp::is_wpp(n, fac);
    Outcome o;
    o.report.command = "wpp verify";
    o.report.inputs = {{"n", to_json(n)}};
    o.report.result = {{"value", value}, {"factorization", to_json(fac)}};
    if (value) o.report.result["n_q"] = to_json(wpp::n_q(n, fac));
    o.answer = value;
    o.text = std::string(value ? "true" : "false") + "\n";
    return o;
}

Outcome cmd_wpp_catalog(const Globals& g) {
    // known() factors every entry and rejects any that fails the congruence.
    const auto catalog = wpp::WppCatalog::known(g.factor_cap);
    Outcome o;
    o.report.command = "wpp catalog";
    o.report.result = {{"entries", catalog_json(catalog)}, {"verified", true}};
    for (const auto& e : catalog.entries) {
        std::string fac;
        for (const auto& f : e.factorization) fac += (fac.empty() ? "" : " * ") + f.prime.get_str();
        o.text += e.value.get_str() + "  n_q=" + e.n_q.get_str() + "  = " + (fac.empty() ? "1" : fac) + "\n";
    }
    return o;
}

Outcome cmd_cond(const std::string& p_text) {
    const Nat p = require_prime_arg(p_text);
    const bool value = qp::cor_cond_check(p);
    Json cands = Json::array();
    for (unsigned c : qp::cond_multipliers()) {
        const Nat w = 1 + c * p;
        cands.push_back({{"multiplier", std::to_string(c)}, {"value", to_json(w)}, {"prime", arith::is_prime(w)}});
    }
    Outcome o;
    o.report.command = "cond";
    o.report.inputs = {{"p", to_json(p)}};
    o.report.result = {{"value", value}, {"candidates", cands}};
    o.answer = value;
    o.text = std::string(value ? "true" : "false") + "\n";
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solution sets of 1^n + 2^n + ... + n^n == m (mod n)", "psc"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.json, "Emit the report as JSON");
    app.add_flag("--quiet", g.quiet, "Print nothing; report through the exit code only");
    app.add_flag("--strict", g.strict, "Exit with code 3 when a boolean result is false");
    app.add_option("--factor-cap", g.factor_cap, "Factorization iteration budget")->check(CLI::PositiveNumber);

    qp::Caps caps;
    auto add_caps = [&](CLI::App* sub) {
        sub->add_option("--max-iter", caps.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
        sub->add_option("--max-subset", caps.max_subset_size, "Largest set whose subsets are enumerated");
        sub->add_option("--max-bits", caps.max_candidate_bits, "Largest candidate width in bits")
            ->check(CLI::PositiveNumber);
    };

    std::string a, b, c;
    std::optional<std::string> bound;
    std::string route = "auto";
    unsigned jobs = 1;
    std::uint64_t block_size = search::kDefaultBlockSize;
    std::optional<std::string> checkpoint;
    std::optional<std::uint64_t> max_blocks;

    auto* oracle = app.add_subcommand("oracle", "Decide S_n(n) == m (mod n) by direct summation");
    oracle->add_option("n", a)->required();
    oracle->add_option("m", b)->required();

    auto* member = app.add_subcommand("member", "Decide S_n(n) == m (mod n) from closed forms");
    member->add_option("n", a)->required();
    member->add_option("m", b)->required();

    auto* qp_cmd = app.add_subcommand("qp", "Construct Q_p iteratively");
    qp_cmd->add_option("p", a)->required();
    add_caps(qp_cmd);

    auto* mp = app.add_subcommand("mp", "Compute M_p for prime p");
    mp->add_option("p", a)->required();
    mp->add_option("--bound", bound, "Report only elements <= bound");
    mp->add_option("--route", route, "structural, wpp or auto")
        ->check(CLI::IsMember({"auto", "structural", "wpp"}));
    add_caps(mp);

    auto* np = app.add_subcommand("np", "Enumerate N_p");
    np->add_option("p", a)->required();
    np->add_option("--bound", bound, "Largest value to enumerate");
    add_caps(np);

    auto* search_cmd = app.add_subcommand("search", "Scan [lo, hi] for members of M_m");
    search_cmd->add_option("lo", a)->required();
    search_cmd->add_option("hi", b)->required();
    search_cmd->add_option("m", c)->required();
    search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    search_cmd->add_option("--block-size", block_size, "Numbers per block")->check(CLI::PositiveNumber);
    search_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file to resume from and update");
    search_cmd->add_option("--max-blocks", max_blocks, "Stop after scanning this many blocks")
        ->check(CLI::PositiveNumber);

    auto* wpp_cmd = app.add_subcommand("wpp", "Weak primary pseudoperfect numbers");
    wpp_cmd->require_subcommand(1);
    auto* wpp_verify = wpp_cmd->add_subcommand("verify", "Test one value");
    wpp_verify->add_option("n", a)->required();
    auto* wpp_catalog = wpp_cmd->add_subcommand("catalog", "Print the verified catalog");

    auto* cond = app.add_subcommand("cond", "Screen p with the eight 1 + c p candidates");
    cond->add_option("p", a)->required();

    std::vector<std::string> argv_store = {"psc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "psc: " << e.what() << "\n";
        return exit_code(Status::Error);
    }

    Outcome o;
    try {
        if (*oracle) o = cmd_oracle(a, b);
        else if (*member) o = cmd_member(a, b, g);
        else if (*qp_cmd) o = cmd_qp(a, caps);
        else if (*mp) o = cmd_mp(a, bound, route, caps, g);
        else if (*np) o = cmd_np(a, bound, caps);
        else if (*search_cmd) o = cmd_search(a, b, c, jobs, block_size, checkpoint, max_blocks, g);
        else if (*wpp_verify) o = cmd_wpp_verify(a, g);
        else if (*wpp_catalog) o = cmd_wpp_catalog(g);
        else if (*cond) o = cmd_cond(a);
    } catch (const FactorizationIncomplete& e) {
        o = {};
        o.report.status = Status::Inconclusive;
        o.report.notes.push_back(e.what());
        o.text = std::string("inconclusive: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        o = {};
        o.report.status = Status::Error;
        o.report.notes.push_back(e.what());
        err << "psc: " << e.what() << "\n";
    }
    if (o.report.command.empty()) {
        for (const auto* sub : app.get_subcommands()) o.report.command = sub->get_name();
    }

    if (!g.quiet) {
        if (g.json) out << o.report.dump();
        else out << o.text;
    }
    if (o.report.status == Status::Ok && g.strict && o.answer && !*o.answer) return kFalseExitCode;
    return exit_code(o.report.status);
}

}  // namespace psc::cli
