// dukan — batch front end for the Dold-Kan / Dwyer-Kan workbench.
//
// Exit codes: 0 success, 1 mathematical or validation failure, 2 I/O or
// parse failure. Reports are byte-deterministic for fixed (input, flags,
// seed). Matrix entries in all JSON are decimal strings.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dukan/complex.hpp"
#include "dukan/doldkan.hpp"
#include "dukan/dwyerkan.hpp"
#include "dukan/functor.hpp"
#include "dukan/json_io.hpp"
#include "dukan/normal_form.hpp"
#include "dukan/xi.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitIo = 2;

struct OutputOptions {
    std::string out_path;       // empty = stdout
    std::string format = "json";
};

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

struct LoadedInput {
    dukan::json doc;
    std::string digest;
};

LoadedInput load_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    LoadedInput li;
    li.digest = fnv1a64(bytes);
    li.doc = dukan::json::parse(bytes);
    return li;
}

dukan::json failure_to_json(const dukan::IdentityFailure& f) {
    dukan::json j;
    j["name"] = f.name;
    j["lhs"] = dukan::matrix_to_json(f.lhs);
    j["rhs"] = dukan::matrix_to_json(f.rhs);
    return j;
}

dukan::json factors_to_json(const std::vector<dukan::Int>& factors) {
    dukan::json a = dukan::json::array();
    for (const dukan::Int& f : factors) a.push_back(f.str());
    return a;
}

void render_text(std::ostream& os, const dukan::json& report, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = report.begin(); it != report.end(); ++it) {
        if (it.value().is_object()) {
            os << pad << it.key() << ":\n";
            render_text(os, it.value(), indent + 2);
        } else {
            os << pad << it.key() << ": " << it.value().dump() << "\n";
        }
    }
}

int emit(const dukan::json& report, const OutputOptions& opts, int exit_code) {
    std::ostringstream body;
    if (opts.format == "text") {
        render_text(body, report);
    } else {
        body << report.dump(2) << "\n";
    }
    if (opts.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "dukan: cannot open output file: " << opts.out_path << "\n";
            return kExitIo;
        }
        out << body.str();
    }
    return exit_code;
}

dukan::json base_report(const std::string& command, const std::string& digest) {
    dukan::json r;
    r["command"] = command;
    r["input_digest"] = digest;
    r["failures"] = dukan::json::array();
    return r;
}

/// d^2 = 0 / delta^2 = 0 failures for complex inputs, with matrix sides.
void complex_failures(const dukan::ChainComplex& chain,
                      const std::vector<dukan::IntMatrix>* delta, dukan::json& failures) {
    for (std::size_t n = 1; n + 1 <= chain.trunc; ++n) {
        dukan::IntMatrix sq = chain.d[n] * chain.d[n + 1];
        if (!sq.is_zero())
            failures.push_back(failure_to_json({"d^2 != 0 at degree " + std::to_string(n + 1),
                                                sq, dukan::IntMatrix::zero(sq.rows(), sq.cols())}));
    }
    if (delta)
        for (std::size_t n = 0; n + 1 < chain.trunc; ++n) {
            dukan::IntMatrix sq = (*delta)[n + 1] * (*delta)[n];
            if (!sq.is_zero())
                failures.push_back(failure_to_json(
                    {"delta^2 != 0 at degree " + std::to_string(n), sq,
                     dukan::IntMatrix::zero(sq.rows(), sq.cols())}));
        }
}

void finalize(dukan::json& report, int exit_code) {
    report["status"] = exit_code == kExitOk ? "ok" : "fail";
    report["exit"] = exit_code;
}

// ---------------------------------------------------------------------------

int cmd_chains(const std::string& path, const OutputOptions& opts) {
    LoadedInput in = load_input(path);
    dukan::json report = base_report("chains", in.digest);
    const std::string kind = dukan::json_kind(in.doc);
    int code = kExitOk;
    if (kind == "simplicial") {
        auto x = dukan::simplicial_from_json(in.doc);
        dukan::ValidationReport vr = dukan::validate(x);
        for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
        if (!vr.ok()) {
            code = kExitMath;
        } else {
            auto nc = dukan::normalized_chains(x);
            report["complex"] = dukan::chain_to_json(nc.complex);
            report["ranks"] = nc.complex.ranks;
            dukan::json h = dukan::json::array();
            for (const auto& factors : dukan::homology_of(nc.complex))
                h.push_back(factors_to_json(factors));
            report["homology"] = std::move(h);
        }
    } else if (kind == "duplicial") {
        auto x = dukan::duplicial_from_json(in.doc);
        dukan::ValidationReport vr = dukan::validate(x);
        for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
        if (!vr.ok()) {
            code = kExitMath;
        } else {
            auto nd = dukan::normalized_duchains(x);
            report["complex"] = dukan::duchain_to_json(nd.duchain);
            report["ranks"] = nd.duchain.chain.ranks;
            dukan::json h = dukan::json::array();
            for (const auto& factors : dukan::homology_of(nd.duchain.chain))
                h.push_back(factors_to_json(factors));
            report["homology"] = std::move(h);
        }
    } else {
        throw dukan::JsonFormatError("chains expects a simplicial or duplicial object, got " +
                                     kind);
    }
    finalize(report, code);
    return emit(report, opts, code);
}

int cmd_nerve(const std::string& path, std::size_t trunc, const OutputOptions& opts) {
    LoadedInput in = load_input(path);
    dukan::json report = base_report("nerve", in.digest);
    report["trunc"] = trunc;
    const std::string kind = dukan::json_kind(in.doc);
    int code = kExitOk;

    auto rank_check = [&](const dukan::ChainComplex& b, const std::vector<std::size_t>& ranks) {
        dukan::json rows = dukan::json::array();
        for (std::size_t n = 0; n < ranks.size(); ++n) {
            const std::size_t expected = dukan::nerve_rank_formula(b, n);
            dukan::json row;
            row["degree"] = n;
            row["rank"] = ranks[n];
            row["formula"] = expected;
            rows.push_back(row);
            if (expected != ranks[n]) {
                report["failures"].push_back({{"name", "nerve rank formula fails at degree " +
                                                           std::to_string(n)}});
                code = kExitMath;
            }
        }
        report["rank_formula"] = std::move(rows);
    };

    if (kind == "chain") {
        auto b = dukan::chain_from_json(in.doc);
        complex_failures(b, nullptr, report["failures"]);
        if (!report["failures"].empty()) {
            finalize(report, kExitMath);
            return emit(report, opts, kExitMath);
        }
        dukan::DoldKanNerve nv = dukan::dold_kan_nerve(b, trunc);
        dukan::ValidationReport vr = dukan::validate(nv.object);
        for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
        if (!vr.ok()) code = kExitMath;
        rank_check(b, nv.object.ranks);
        report["object"] = dukan::simplicial_to_json(nv.object);
    } else if (kind == "duchain") {
        auto b = dukan::duchain_from_json(in.doc);
        complex_failures(b.chain, &b.delta, report["failures"]);
        if (!report["failures"].empty()) {
            finalize(report, kExitMath);
            return emit(report, opts, kExitMath);
        }
        dukan::DwyerKanNerve nv = dukan::dwyer_kan_nerve(b, trunc);
        dukan::ValidationReport vr = dukan::validate(nv.object);
        for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
        if (!vr.ok()) code = kExitMath;
        rank_check(b.chain, nv.object.ranks);
        report["object"] = dukan::duplicial_to_json(nv.object);
    } else {
        throw dukan::JsonFormatError("nerve expects a chain or duchain complex, got " + kind);
    }
    finalize(report, code);
    return emit(report, opts, code);
}

dukan::json classification_to_json(const dukan::Classification& c) {
    dukan::json degrees = dukan::json::array();
    for (const auto& v : c.degrees) {
        dukan::json d;
        d["degree"] = v.degree;
        d["paracyclic_ok"] = v.paracyclic_ok;
        d["cyclic_ok"] = v.cyclic_ok;
        d["id_minus_d_delta"] = dukan::matrix_to_json(v.id_minus_d_delta);
        d["id_minus_delta_d"] = dukan::matrix_to_json(v.id_minus_delta_d);
        d["cyclic_product"] = dukan::matrix_to_json(v.cyclic_product);
        degrees.push_back(std::move(d));
    }
    dukan::json j;
    j["degrees"] = std::move(degrees);
    j["paracyclic"] = c.all_paracyclic;
    j["cyclic"] = c.all_cyclic;
    return j;
}

int cmd_classify(const std::string& path, const OutputOptions& opts) {
    LoadedInput in = load_input(path);
    dukan::json report = base_report("classify", in.digest);
    const std::string kind = dukan::json_kind(in.doc);
    int code = kExitOk;
    if (kind == "duchain") {
        auto b = dukan::duchain_from_json(in.doc);
        if (!b.is_complex())
            throw std::invalid_argument("classify: input violates d^2 = 0 or delta^2 = 0");
        report["classification"] = classification_to_json(dukan::classify(b));
        report["note"] = "verdicts are within truncation " + std::to_string(b.trunc());
    } else if (kind == "duplicial") {
        auto x = dukan::duplicial_from_json(in.doc);
        dukan::ValidationReport vr = dukan::validate(x);
        for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
        if (!vr.ok()) {
            code = kExitMath;
        } else {
            auto nd = dukan::normalized_duchains(x);
            report["classification"] = classification_to_json(dukan::classify(nd.duchain));
            dukan::json eq = dukan::json::array();
            for (std::size_t n = 0; n < x.trunc; ++n) {
                dukan::json row;
                row["degree"] = n;
                row["holds"] = dukan::cyclic_equation_check(x, n, nd);
                eq.push_back(row);
            }
            report["cyclic_equation"] = std::move(eq);
            report["note"] = "verdicts are within truncation " + std::to_string(x.trunc);
        }
    } else {
        throw dukan::JsonFormatError("classify expects a duchain or duplicial input, got " +
                                     kind);
    }
    finalize(report, code);
    return emit(report, opts, code);
}

int cmd_homology(const std::string& path, const OutputOptions& opts) {
    LoadedInput in = load_input(path);
    dukan::json report = base_report("homology", in.digest);
    const std::string kind = dukan::json_kind(in.doc);
    dukan::ChainComplex c;
    auto validated_chains = [&](const auto& x) {
        dukan::ValidationReport vr = dukan::validate(x);
        if (!vr.ok()) {
            for (const auto& f : vr.failures) report["failures"].push_back(failure_to_json(f));
            finalize(report, kExitMath);
            return false;
        }
        return true;
    };
    if (kind == "chain") {
        c = dukan::chain_from_json(in.doc);
    } else if (kind == "duchain") {
        c = dukan::duchain_from_json(in.doc).chain;
    } else if (kind == "simplicial") {
        auto x = dukan::simplicial_from_json(in.doc);
        if (!validated_chains(x)) return emit(report, opts, kExitMath);
        c = dukan::normalized_chains(x).complex;
    } else if (kind == "duplicial") {
        auto x = dukan::duplicial_from_json(in.doc);
        if (!validated_chains(x)) return emit(report, opts, kExitMath);
        c = dukan::normalized_chains(x.underlying()).complex;
    } else {
        throw dukan::JsonFormatError("homology: unknown kind " + kind);
    }
    if (!c.is_complex()) throw std::invalid_argument("homology: d^2 != 0");
    dukan::json h = dukan::json::array();
    for (const auto& factors : dukan::homology_of(c)) h.push_back(factors_to_json(factors));
    report["homology"] = std::move(h);
    report["ranks"] = c.ranks;
    finalize(report, kExitOk);
    return emit(report, opts, kExitOk);
}

int cmd_verify(const std::string& path, const OutputOptions& opts) {
    LoadedInput in = load_input(path);
    dukan::json report = base_report("verify", in.digest);
    const std::string kind = dukan::json_kind(in.doc);
    report["kind"] = kind;
    int code = kExitOk;
    if (kind == "simplicial") {
        auto x = dukan::simplicial_from_json(in.doc);
        for (const auto& f : dukan::validate(x).failures)
            report["failures"].push_back(failure_to_json(f));
    } else if (kind == "duplicial") {
        auto x = dukan::duplicial_from_json(in.doc);
        for (const auto& f : dukan::validate(x).failures)
            report["failures"].push_back(failure_to_json(f));
    } else if (kind == "chain") {
        auto c = dukan::chain_from_json(in.doc);
        complex_failures(c, nullptr, report["failures"]);
    } else if (kind == "duchain") {
        auto b = dukan::duchain_from_json(in.doc);
        complex_failures(b.chain, &b.delta, report["failures"]);
    } else {
        throw dukan::JsonFormatError("verify: unknown kind " + kind);
    }
    if (!report["failures"].empty()) code = kExitMath;
    finalize(report, code);
    return emit(report, opts, code);
}

int cmd_roundtrip(const std::string& path, bool gen, std::uint64_t seed, std::size_t gen_trunc,
                  std::size_t max_rank, std::int64_t entry_bound, std::size_t trunc,
                  const OutputOptions& opts) {
    dukan::DuchainComplex b;
    dukan::json report;
    if (gen) {
        b = dukan::gen_random_duchain(seed, gen_trunc, max_rank, entry_bound);
        report = base_report("roundtrip", "-");
        report["seed"] = seed;
    } else {
        LoadedInput in = load_input(path);
        report = base_report("roundtrip", in.digest);
        if (dukan::json_kind(in.doc) != "duchain")
            throw dukan::JsonFormatError("roundtrip expects a duchain complex");
        b = dukan::duchain_from_json(in.doc);
    }
    report["trunc"] = trunc;
    complex_failures(b.chain, &b.delta, report["failures"]);
    if (!report["failures"].empty()) {
        finalize(report, kExitMath);
        return emit(report, opts, kExitMath);
    }
    dukan::RoundtripReport rt = dukan::roundtrip(b, trunc);
    dukan::json rows = dukan::json::array();
    for (std::size_t n = 0; n <= trunc; ++n) {
        dukan::json row;
        row["degree"] = n;
        row["comparison"] = dukan::matrix_to_json(rt.comparison[n]);
        row["unimodular"] = dukan::is_unimodular(rt.comparison[n]);
        rows.push_back(std::move(row));
    }
    report["comparison"] = std::move(rows);
    for (const auto& f : rt.failures) report["failures"].push_back(failure_to_json(f));
    report["intertwining"] = rt.pass() ? "PASS" : "FAIL";
    const int code = rt.pass() ? kExitOk : kExitMath;
    finalize(report, code);
    return emit(report, opts, code);
}

int cmd_gen(std::uint64_t seed, std::size_t trunc, std::size_t max_rank,
            std::int64_t entry_bound, const OutputOptions& opts) {
    dukan::DuchainComplex b = dukan::gen_random_duchain(seed, trunc, max_rank, entry_bound);
    return emit(dukan::duchain_to_json(b), opts, kExitOk);
}

int cmd_xi(const std::string& op, const std::vector<std::string>& files, std::int64_t at,
           const OutputOptions& opts) {
    dukan::json report = base_report("xi " + op, "-");
    if (op == "factorize") {
        if (files.size() != 1) throw dukan::JsonFormatError("xi factorize takes one XiMap file");
        dukan::XiMap f = dukan::ximap_from_json(load_input(files[0]).doc);
        dukan::GeneratorWord w = dukan::factorize(f);
        dukan::json tokens = dukan::json::array();
        for (const auto& t : w) tokens.push_back(t.to_string());
        report["word"] = std::move(tokens);
        report["recomposed"] = dukan::ximap_to_json(dukan::compose_word(w, f.src));
    } else if (op == "compose") {
        if (files.size() != 2)
            throw dukan::JsonFormatError("xi compose takes G.json F.json (g after f)");
        dukan::XiMap g = dukan::ximap_from_json(load_input(files[0]).doc);
        dukan::XiMap f = dukan::ximap_from_json(load_input(files[1]).doc);
        report["result"] = dukan::ximap_to_json(dukan::compose(g, f));
    } else if (op == "eval") {
        if (files.size() != 1) throw dukan::JsonFormatError("xi eval takes one XiMap file");
        dukan::XiMap f = dukan::ximap_from_json(load_input(files[0]).doc);
        report["at"] = at;
        report["value"] = f.eval_at(at);
    } else {
        throw dukan::JsonFormatError("xi: unknown op " + op +
                                     " (expected factorize, compose or eval)");
    }
    finalize(report, kExitOk);
    return emit(report, opts, kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dukan — exact Dold-Kan / Dwyer-Kan workbench"};
    app.require_subcommand(1);

    OutputOptions opts;
    app.add_option("--out", opts.out_path, "Write the report to FILE instead of stdout");
    app.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    if (const char* env = std::getenv("DUKAN_MAX_ENTRY_BITS")) {
        char* end = nullptr;
        const unsigned long long bits = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            std::cerr << "dukan: DUKAN_MAX_ENTRY_BITS must be a nonnegative integer\n";
            return kExitIo;
        }
        dukan::set_max_entry_bits(static_cast<std::size_t>(bits));
    }

    std::string input;
    std::size_t trunc = 0;
    std::uint64_t seed = 0;
    std::size_t gen_trunc = 3, max_rank = 3;
    std::int64_t entry_bound = 2;
    bool gen = false;
    std::string xi_op;
    std::vector<std::string> xi_files;
    std::int64_t xi_at = 0;

    auto* chains = app.add_subcommand("chains", "Normalized (du)chains and homology");
    chains->add_option("input", input, "Simplicial or duplicial object JSON")->required();

    auto* nerve = app.add_subcommand("nerve", "Dold-Kan / Dwyer-Kan nerve of a complex");
    nerve->add_option("input", input, "Chain or duchain complex JSON")->required();
    nerve->add_option("--trunc", trunc, "Nerve truncation degree")->required();

    auto* classify = app.add_subcommand("classify", "Paracyclic/cyclic classification");
    classify->add_option("input", input, "Duchain or duplicial JSON")->required();

    auto* homology = app.add_subcommand("homology", "Homology invariant factors");
    homology->add_option("input", input, "Any complex or object JSON")->required();

    auto* verify = app.add_subcommand("verify", "Validate an object or complex");
    verify->add_option("input", input, "Any complex or object JSON")->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "B -> N'(B) -> C(N'(B)) comparison");
    roundtrip->add_option("input", input, "Duchain complex JSON");
    roundtrip->add_option("--trunc", trunc, "Nerve truncation degree")->required();
    roundtrip->add_flag("--gen", gen, "Generate the input duchain instead of reading a file");
    roundtrip->add_option("--seed", seed, "Seed for --gen (mandatory when generating)");
    roundtrip->add_option("--gen-trunc", gen_trunc, "Truncation of the generated duchain");
    roundtrip->add_option("--max-rank", max_rank, "Max levelwise rank for --gen");
    roundtrip->add_option("--entry-bound", entry_bound, "Entry bound for --gen");

    auto* genc = app.add_subcommand("gen", "Emit a seeded random duchain complex");
    genc->add_option("--seed", seed, "Deterministic seed")->required();
    genc->add_option("--trunc", gen_trunc, "Truncation degree")->required();
    genc->add_option("--max-rank", max_rank, "Max levelwise rank")->required();
    genc->add_option("--entry-bound", entry_bound, "Entry bound before kernel composition");

    auto* xi = app.add_subcommand("xi", "Indexing-category debugging helpers");
    xi->add_option("op", xi_op, "factorize | compose | eval")->required();
    xi->add_option("files", xi_files, "XiMap JSON file(s)");
    xi->add_option("--at", xi_at, "Evaluation point for eval");

    // --out/--format live on the top-level app; let them appear after the
    // subcommand too.
    for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (chains->parsed()) return cmd_chains(input, opts);
        if (nerve->parsed()) return cmd_nerve(input, trunc, opts);
        if (classify->parsed()) return cmd_classify(input, opts);
        if (homology->parsed()) return cmd_homology(input, opts);
        if (verify->parsed()) return cmd_verify(input, opts);
        if (roundtrip->parsed()) {
            if (gen && !roundtrip->count("--seed")) {
                std::cerr << "dukan: --gen requires --seed\n";
                return kExitIo;
            }
            if (!gen && input.empty()) {
                std::cerr << "dukan: roundtrip needs an input file or --gen\n";
                return kExitIo;
            }
            return cmd_roundtrip(input, gen, seed, gen_trunc, max_rank, entry_bound, trunc,
                                 opts);
        }
        if (genc->parsed()) return cmd_gen(seed, gen_trunc, max_rank, entry_bound, opts);
        if (xi->parsed()) return cmd_xi(xi_op, xi_files, xi_at, opts);
    } catch (const dukan::JsonFormatError& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitIo;
    } catch (const dukan::json::exception& e) {
        std::cerr << "dukan: JSON parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitIo;
    } catch (const dukan::EntryLimitExceeded& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitMath;
    } catch (const dukan::OutOfTruncation& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::out_of_range& e) {
        std::cerr << "dukan: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::logic_error& e) {
        std::cerr << "dukan: internal error: " << e.what() << "\n";
        return kExitMath;
    }
    return kExitIo;
}
