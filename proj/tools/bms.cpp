// Command-line front end: generate test strings, compress/decompress via the
// annealing search, run the Lempel-Ziv baseline, verify schemes, and emit
// benchmark CSVs.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bms/annealing.hpp"
#include "bms/approx_cert.hpp"
#include "bms/generators.hpp"
#include "bms/lz.hpp"
#include "bms/scheme.hpp"
#include "bms/suffix_index.hpp"
#include "bms/text.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitIoError = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("failed reading " + path);
    return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.good()) throw IoError("failed writing " + path);
}

struct FamilyArgs {
    std::string family;
    int index = 13;
    int order = 10;
    bms::Pos n = 300;
    int d = 14;
    std::uint64_t gen_seed = 1;

    void add_options(CLI::App* cmd, bool required, const char* seed_flag = "--seed") {
        auto* fam = cmd->add_option("--family", family, "fibonacci|thue-morse|debruijn|planted")
                        ->check(CLI::IsMember({"fibonacci", "thue-morse", "debruijn", "planted"}));
        if (required) fam->required();
        cmd->add_option("--index", index, "Fibonacci/Thue-Morse index");
        cmd->add_option("--order", order, "de Bruijn order");
        cmd->add_option("--n", n, "planted text length (with sentinel)");
        cmd->add_option("--d", d, "planted alphabet size / optimum");
        cmd->add_option(seed_flag, gen_seed, "planted generator seed");
    }

    bms::Text make_text() const {
        if (family == "fibonacci") return bms::fibonacci(index);
        if (family == "thue-morse") return bms::thue_morse(index);
        if (family == "debruijn") return bms::de_bruijn(order);
        if (family == "planted") return bms::planted(n, d, gen_seed).text;
        throw IoError("unknown family " + family);
    }

    bms::FamilyParams cert_params() const {
        if (family == "fibonacci") return {bms::Family::Fibonacci, 0, 0};
        if (family == "thue-morse") return {bms::Family::ThueMorse, 0, 0};
        if (family == "debruijn") return {bms::Family::DeBruijn, order, 0};
        if (family == "planted") return {bms::Family::Planted, 0, d};
        return {bms::Family::Generic, 0, 0};
    }

    std::string params_string() const {
        if (family == "fibonacci" || family == "thue-morse") return "index=" + std::to_string(index);
        if (family == "debruijn") return "order=" + std::to_string(order);
        return "n=" + std::to_string(n) + ";d=" + std::to_string(d) +
               ";gen_seed=" + std::to_string(gen_seed);
    }
};

struct AnnealArgs {
    bms::AnnealParams params;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--seed", params.seed, "RNG seed");
        cmd->add_option("--t0", params.t0, "initial temperature");
        cmd->add_option("--alpha", params.alpha, "geometric cooling factor");
        cmd->add_option("--cool-every", params.cool_every, "iterations between cooling steps");
        cmd->add_option("--max-iters", params.max_iters, "iteration budget");
        cmd->add_option("--retries", params.retries, "source samples before split resolution");
        cmd->add_option_function<std::string>(
               "--init",
               [this](const std::string& v) {
                   params.init = v == "lz" ? bms::AnnealParams::Init::Lz
                                           : bms::AnnealParams::Init::Explicit;
               },
               "initial scheme: explicit|lz")
            ->check(CLI::IsMember({"explicit", "lz"}));
    }
};

std::string trace_csv_header() { return "iteration,k,temperature\n"; }

std::string trace_row_csv(const bms::TraceRow& row) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%ld,%d,%.17g\n", row.iteration, row.k, row.temperature);
    return buf;
}

const char* stop_name(bms::StopReason r) {
    return r == bms::StopReason::LocalMinimum ? "local-minimum" : "budget";
}

int cmd_generate(const FamilyArgs& fam, const std::string& out_path) {
    const bms::Text text = fam.make_text();
    write_file(out_path, text.without_sentinel());
    std::cout << "family=" << fam.family << " n=" << text.n() << " bytes=" << text.n() - 1;
    if (fam.family == "planted") std::cout << " seed=" << fam.gen_seed;
    std::cout << "\n";
    return 0;
}

int cmd_compress(const std::string& in_path, const std::string& out_path,
                 const AnnealArgs& anneal, const std::string& trace_path, bool progress) {
    const bms::Text text = bms::attach_sentinel(read_file(in_path));
    const bms::SuffixIndex idx = bms::SuffixIndex::build(text);

    std::string trace = trace_csv_header();
    bms::RunHooks hooks;
    if (!trace_path.empty()) hooks.on_trace = [&](const bms::TraceRow& r) { trace += trace_row_csv(r); };
    long last_report = 0;
    if (progress)
        hooks.on_transition = [&](const bms::Transition&) {
            if (++last_report % 1000 == 0) std::cerr << "... " << last_report << " proposals\n";
        };

    const bms::RunResult result = bms::run(text, idx, anneal.params, &hooks);
    write_file(out_path, bms::write_scheme(result.scheme));
    if (!trace_path.empty()) write_file(trace_path, trace);

    std::cout << "k=" << result.k << " iterations=" << result.iterations
              << " stop=" << stop_name(result.stop_reason) << " certificate="
              << (result.certificate ? "true" : "false") << " seed=" << anneal.params.seed << "\n";
    return 0;
}

int cmd_decompress(const std::string& in_path, const std::string& out_path) {
    const bms::MacroScheme scheme = bms::read_scheme(read_file(in_path));
    const auto text = bms::materialize(scheme);
    if (!text) {
        std::cerr << "scheme does not decode (cyclic pointers)\n";
        return kExitInvalid;
    }
    write_file(out_path, text->without_sentinel());
    return 0;
}

int cmd_lz(const std::string& in_path, const std::string& out_path) {
    const bms::Text text = bms::attach_sentinel(read_file(in_path));
    const bms::SuffixIndex idx = bms::SuffixIndex::build(text);
    const bms::MacroScheme scheme = bms::lz_parse(text, idx);
    write_file(out_path, bms::write_scheme(scheme));
    std::cout << "k=" << scheme.k() << "\n";
    return 0;
}

int cmd_verify(const std::string& scheme_path, const std::string& text_path, bool certificate,
               bool attractor_bruteforce, bms::Pos attractor_cap) {
    const bms::MacroScheme scheme = bms::read_scheme(read_file(scheme_path));
    const bms::Text text = bms::attach_sentinel(read_file(text_path));
    if (scheme.text_len() != text.n())
        throw bms::FormatError("scheme is for length " + std::to_string(scheme.text_len()) +
                               " but the text has length " + std::to_string(text.n()));

    const bms::ValidationReport report = bms::validate(scheme, text);
    json validity = {{"type", "validity"},
                     {"valid", report.valid()},
                     {"k", scheme.k()},
                     {"n", text.n()}};
    validity["cycles"] = report.cycles;
    validity["mismatched_phrases"] = report.mismatched_phrases;
    std::cout << validity.dump() << "\n";

    if (report.valid() && certificate) {
        const bms::SuffixIndex idx = bms::SuffixIndex::build(text);
        const bms::CertificateReport cert = bms::check_certificate(scheme, text, idx);
        json line = {{"type", "certificate"},
                     {"holds", cert.holds},
                     {"k", cert.k},
                     {"lower_bound", cert.lower_bound},
                     {"reading", "pair-minus-final-letter"}};
        if (cert.ratio_bound) line["ratio_bound"] = *cert.ratio_bound;
        if (cert.witness) line["witness"] = {cert.witness->first, cert.witness->second};
        std::cout << line.dump() << "\n";
    }
    if (report.valid() && attractor_bruteforce) {
        const bms::Attractor att = bms::attractor_of(scheme);
        json line = {{"type", "attractor"}, {"attractor_size", att.size()}};
        if (text.n() <= attractor_cap)
            line["verified"] = bms::verify_attractor(text, att.positions, attractor_cap);
        else
            line["skipped"] = true;
        std::cout << line.dump() << "\n";
    }
    return report.valid() ? 0 : kExitInvalid;
}

struct BenchRun {
    std::uint64_t seed = 0;
    std::vector<bms::TraceRow> rows;
    bms::RunResult result;
};

int cmd_bench(const FamilyArgs& fam, const AnnealArgs& anneal, int runs,
              const std::string& csv_path, int jobs) {
    const bms::Text text = fam.make_text();
    const bms::SuffixIndex idx = bms::SuffixIndex::build(text);
    const int lz_k = bms::lz_size(text, idx);
    const int bound = bms::lower_bound(fam.cert_params(), text);

    const auto one_run = [&](std::uint64_t seed) {
        BenchRun out;
        out.seed = seed;
        bms::AnnealParams params = anneal.params;
        params.seed = seed;
        bms::RunHooks hooks;
        hooks.on_trace = [&](const bms::TraceRow& r) { out.rows.push_back(r); };
        out.result = bms::run(text, idx, params, &hooks);
        return out;
    };

    std::vector<BenchRun> results(static_cast<std::size_t>(runs));
    if (jobs < 1) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> futures;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w)
        futures.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= runs) return;
                results[static_cast<std::size_t>(i)] = one_run(static_cast<std::uint64_t>(i) + 1);
            }
        }));
    for (auto& f : futures) f.get();

    std::string csv = "family,params,seed,iteration,k,temperature,lz_size,lower_bound,certificate\n";
    for (const BenchRun& r : results) {
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const bms::TraceRow& row = r.rows[i];
            const bool final_row = i + 1 == r.rows.size();
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", row.temperature);
            csv += fam.family + "," + fam.params_string() + "," + std::to_string(r.seed) + "," +
                   std::to_string(row.iteration) + "," + std::to_string(row.k) + "," + buf + "," +
                   std::to_string(lz_k) + "," + std::to_string(bound) + "," +
                   (final_row ? (r.result.certificate ? "true" : "false") : "") + "\n";
        }
        std::cout << "seed=" << r.seed << " k=" << r.result.k
                  << " iterations=" << r.result.iterations
                  << " stop=" << stop_name(r.result.stop_reason)
                  << " certificate=" << (r.result.certificate ? "true" : "false")
                  << " lz=" << lz_k << " lower_bound=" << bound << "\n";
    }
    if (!csv_path.empty()) write_file(csv_path, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bidirectional macro scheme toolkit"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "write a test string (no sentinel)");
    FamilyArgs gen_fam;
    gen_fam.add_options(generate, true);
    std::string gen_out;
    generate->add_option("-o,--output", gen_out, "output file")->required();

    // compress
    auto* compress = app.add_subcommand("compress", "search for a small macro scheme");
    std::string c_in, c_out, c_trace;
    bool c_progress = false;
    AnnealArgs c_anneal;
    compress->add_option("-i,--input", c_in, "raw input file")->required();
    compress->add_option("-o,--output", c_out, "scheme output file")->required();
    compress->add_option("--trace", c_trace, "write an iteration,k,temperature CSV");
    compress->add_flag("--progress", c_progress, "report progress on stderr");
    c_anneal.add_options(compress);

    // decompress
    auto* decompress = app.add_subcommand("decompress", "decode a scheme back to bytes");
    std::string d_in, d_out;
    decompress->add_option("-i,--input", d_in, "scheme file")->required();
    decompress->add_option("-o,--output", d_out, "output file")->required();

    // lz
    auto* lz = app.add_subcommand("lz", "baseline Lempel-Ziv parse");
    std::string lz_in, lz_out;
    lz->add_option("-i,--input", lz_in, "raw input file")->required();
    lz->add_option("-o,--output", lz_out, "scheme output file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "validate a scheme against its text");
    std::string v_scheme, v_text;
    bool v_cert = false, v_attr = false;
    bms::Pos v_cap = 256;
    verify->add_option("-i,--input", v_scheme, "scheme file")->required();
    verify->add_option("--text", v_text, "raw text file")->required();
    verify->add_flag("--certificate", v_cert, "check the 2-approximation condition");
    verify->add_flag("--attractor-bruteforce", v_attr, "exhaustively verify the attractor");
    verify->add_option("--attractor-cap", v_cap, "brute-force size cap");

    // bench
    auto* bench = app.add_subcommand("bench", "repeated runs over a string family");
    FamilyArgs b_fam;
    b_fam.add_options(bench, true, "--gen-seed");
    AnnealArgs b_anneal;
    b_anneal.add_options(bench);
    int b_runs = 20;
    int b_jobs = 0;
    std::string b_csv;
    bench->add_option("--runs", b_runs, "number of seeds (1..R)");
    bench->add_option("--csv", b_csv, "output CSV path");
    bench->add_option("--jobs", b_jobs, "parallel workers (0 = all cores)");

    try {
        app.parse(argc, argv);
        if (*generate) return cmd_generate(gen_fam, gen_out);
        if (*compress) return cmd_compress(c_in, c_out, c_anneal, c_trace, c_progress);
        if (*decompress) return cmd_decompress(d_in, d_out);
        if (*lz) return cmd_lz(lz_in, lz_out);
        if (*verify) return cmd_verify(v_scheme, v_text, v_cert, v_attr, v_cap);
        if (*bench) return cmd_bench(b_fam, b_anneal, b_runs, b_csv, b_jobs);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitIoError;
    } catch (const bms::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const bms::SentinelCollision& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitIoError;
}
