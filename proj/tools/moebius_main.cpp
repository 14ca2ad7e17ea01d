// moebius: summatory functions of mu and Lambda, remainder terms, and a
// catalog-driven verifier for explicit bounds on them.
//
//   moebius checkpoint --upto 1e8          stream + persist checkpoints (resumable)
//   moebius verify --id boundRbis          verify one catalog bound
//   moebius verify --all                   verify every desk-scannable bound
//   moebius constants                      recompute the pinned constants
//   moebius scan-r4 --a-lo 1000 --a-hi 40000 --x-lo 1.8e9 --x-hi 2e9
//   moebius report --dir out/              aggregate stored reports
//   moebius dump --kind mu --lo 1 --hi 100 debug CSV of sieve output
//
// Exit codes: 0 all checks pass, 2 any FAIL, 3 any INCONCLUSIVE, 64 usage.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "moebius/remainder.hpp"
#include "moebius/summatory.hpp"
#include "moebius/verify.hpp"

using namespace moebius;
namespace fs = std::filesystem;

namespace {

// "2e9", "1.5e7", "4194304" -> u64
u64 parse_count(const std::string& s) {
    const double v = std::strtod(s.c_str(), nullptr);
    if (v < 0 || v > 1.8e19) throw CLI::ValidationError("value out of range: " + s);
    return static_cast<u64>(std::llround(v));
}

int status_rank(const std::string& s) {
    if (s == "FAIL") return 2;
    if (s == "INCONCLUSIVE") return 1;
    return 0;   // PASS and SKIPPED do not gate
}

int exit_code_for(int worst_rank) {
    return worst_rank == 2 ? 2 : (worst_rank == 1 ? 3 : 0);
}

void print_report_table(const std::vector<VerificationReport>& reports) {
    std::printf("%-18s %-12s %-24s %-12s %-13s %-12s %-10s %s\n", "id", "status", "range",
                "ratio", "witness", "margin", "err", "secs");
    for (const auto& r : reports) {
        char range[64];
        std::snprintf(range, sizeof(range), "[%" PRIu64 ", %" PRIu64 "]", r.lo, r.hi);
        std::printf("%-18s %-12s %-24s %-12.6g %-13" PRIu64 " %-12.4g %-10.3g %.2f\n",
                    r.id.c_str(), r.status.c_str(), range, r.ratio, r.witness_x, r.margin,
                    r.err_bound, r.seconds);
    }
}

void write_reports_json(const std::vector<VerificationReport>& reports, const std::string& path) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << arr.dump(2) << "\n";
}

int cmd_checkpoint(const RunConfig& cfg, u64 upto) {
    const fs::path dir = cfg.resolved_cache_dir();
    fs::create_directories(dir);
    const fs::path csv = cfg.out_path.empty() ? dir / "checkpoints.csv" : fs::path(cfg.out_path);
    const fs::path state_path = csv.string() + ".state";

    SummatoryState<double> st;
    bool resumed = false;
    if (fs::exists(csv) && load_resume_state(state_path.string(), st)) {
        std::ifstream in(csv);
        std::string header;
        std::getline(in, header);
        if (header != kCheckpointCsvHeader)
            throw std::runtime_error("checkpoint file header mismatch; refusing to resume");
        resumed = true;
    }
    if (st.n >= upto) {
        std::fprintf(stderr, "checkpoint: nothing to do (state at %" PRIu64 ")\n", st.n);
        return 0;
    }

    std::ofstream out;
    if (resumed) {
        out.open(csv, std::ios::app);
    } else {
        out.open(csv, std::ios::trunc);
        out << kCheckpointCsvHeader << "\n";
    }
    if (!out) throw std::runtime_error("cannot write " + csv.string());

    StreamOptions so = cfg.stream();
    st = stream_checkpoints<double>(upto, cfg.stride, so, [&](const SummatoryCheckpoint& c) {
        out << checkpoint_csv_row(c) << "\n";
        out.flush();
    }, st);
    save_resume_state(state_path.string(), st);
    std::fprintf(stderr, "checkpoint: done at X = %" PRIu64 " -> %s\n", st.n, csv.string().c_str());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& id, bool all) {
    std::vector<BoundSpec> specs;
    if (all) {
        for (auto& s : builtin_catalog())
            if (s.scannable()) specs.push_back(s);
    } else {
        auto s = find_spec(id);
        if (!s) {
            std::fprintf(stderr, "unknown bound id: %s\n", id.c_str());
            return 64;
        }
        if (cfg.lo_override) {
            if (s->has_dense()) s->dense_lo = cfg.lo_override;
            if (s->has_samples()) s->sample_lo = cfg.lo_override;
        }
        if (cfg.hi_override) {
            if (s->has_dense()) s->dense_hi = std::min(s->dense_hi, cfg.hi_override);
            if (s->has_samples()) s->sample_hi = std::min(s->sample_hi, cfg.hi_override);
        }
        if (!s->scannable()) {
            std::fprintf(stderr, "bound %s has no desk-scale slice to scan\n", id.c_str());
            return 64;
        }
        specs.push_back(*s);
    }

    auto reports = verify_many(specs, cfg);
    print_report_table(reports);
    if (!cfg.out_path.empty()) write_reports_json(reports, cfg.out_path);
    int worst = 0;
    for (const auto& r : reports) worst = std::max(worst, status_rank(r.status));
    return exit_code_for(worst);
}

int cmd_constants(const RunConfig& cfg) {
    auto checks = constant_checks(cfg);
    std::printf("%-20s %-22s %-14s %-7s %-12s %s\n", "name", "computed", "reference", "cmp",
                "status", "note");
    int worst = 0;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        std::printf("%-20s %-22.10g %-14.10g %-7s %-12s %s\n", c.name.c_str(), c.computed,
                    c.reference, c.comparison.c_str(), c.status.c_str(), c.note.c_str());
        if (c.gating) worst = std::max(worst, status_rank(c.status));
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["computed"] = c.computed;
        j["reference"] = c.reference;
        j["comparison"] = c.comparison;
        j["tolerance"] = c.tolerance;
        j["err_bound"] = c.err_bound;
        j["status"] = c.status;
        j["gating"] = c.gating;
        j["note"] = c.note;
        arr.push_back(j);
    }
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::trunc);
        f << arr.dump(2) << "\n";
    }
    return exit_code_for(worst);
}

int cmd_scan_r4(const RunConfig& cfg, u64 a_lo, u64 a_hi, u64 x_lo, u64 x_hi, double bound,
                u64 recompute_every) {
    auto res = windowed_r4_scan(a_lo, a_hi, x_lo, x_hi, cfg.stream(), recompute_every);
    std::printf("X_lo,X_hi,max_ratio,witness_X,err_bound,recompute_checks\n%s\n",
                res.csv_row().c_str());
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::trunc);
        f << "X_lo,X_hi,max_ratio,witness_X,err_bound,recompute_checks\n" << res.csv_row() << "\n";
    }
    if (!res.recompute_ok) {
        std::fprintf(stderr, "scan-r4: incremental state diverged from recomputation\n");
        return 2;
    }
    if (bound > 0) {
        if (res.max_ratio - res.err_bound > bound) return 2;
        if (res.max_ratio + res.err_bound > bound) return 3;
    }
    return 0;
}

int cmd_report(const RunConfig& cfg, const std::string& dir) {
    std::vector<VerificationReport> all;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json" && e.path().filename() != "aggregate.json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    nlohmann::ordered_json agg = nlohmann::ordered_json::array();
    for (const auto& p : files) {
        std::ifstream f(p);
        nlohmann::ordered_json j;
        f >> j;
        if (!j.is_array()) continue;
        for (auto& item : j) {
            agg.push_back(item);
            VerificationReport r;
            r.id = item.value("id", "");
            r.anchor = item.value("paper_anchor", "");
            if (item.contains("range") && item["range"].is_array() && item["range"].size() == 2) {
                r.lo = item["range"][0].get<u64>();
                r.hi = item["range"][1].get<u64>();
            }
            r.status = item.value("status", "");
            r.witness_x = item.value("witness_x", u64(0));
            r.ratio = item.value("ratio", 0.0);
            r.margin = item.value("margin", 0.0);
            r.err_bound = item.value("err_bound", 0.0);
            r.seconds = item.value("seconds", 0.0);
            r.hash = item.value("config_hash", "");
            all.push_back(r);
        }
    }
    print_report_table(all);
    const fs::path out = cfg.out_path.empty() ? fs::path(dir) / "aggregate.json" : fs::path(cfg.out_path);
    std::ofstream f(out, std::ios::trunc);
    f << agg.dump(2) << "\n";
    int worst = 0;
    for (const auto& r : all) worst = std::max(worst, status_rank(r.status));
    return exit_code_for(worst);
}

int cmd_dump(const RunConfig& cfg, const std::string& kind, u64 lo, u64 hi) {
    SegmentSpec spec{lo, hi};
    spec.validate(u64(1) << 28);
    auto primes = simple_sieve(isqrt(hi));
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!cfg.out_path.empty()) {
        f.open(cfg.out_path, std::ios::trunc);
        os = &f;
    }
    if (kind == "mu") {
        auto seg = sieve_mu(spec, primes, u64(1) << 28);
        *os << "n,mu\n";
        for (u64 n = lo; n <= hi; ++n) *os << n << "," << int(seg.at(n)) << "\n";
    } else if (kind == "mangoldt") {
        *os << "n,p,k\n";
        for (const auto& e : sieve_mangoldt(spec, primes, u64(1) << 28))
            *os << e.n << "," << e.p << "," << e.k << "\n";
    } else {
        std::fprintf(stderr, "unknown dump kind: %s\n", kind.c_str());
        return 64;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"summatory functions of mu and Lambda with a rigorous bound verifier"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string seg_str = "4194304", stride_str = "1000000";
    app.add_option("--segment-size", seg_str, "sieve segment length (>= 1e4)")->capture_default_str();
    app.add_option("--workers", cfg.workers, "sieve worker threads (0 = auto)")->capture_default_str();
    app.add_option("--stride", stride_str, "checkpoint stride")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "checkpoint directory (or MOEBIUS_CACHE_DIR)");
    app.add_option("--out", cfg.out_path, "output file (JSON/CSV depending on command)");
    std::string precision = "standard";
    app.add_option("--precision", precision, "standard | shadow")->check(CLI::IsMember({"standard", "shadow"}));
    app.add_flag("--spot-check", cfg.spot_checks, "re-evaluate PASS reports at 1000 random points");

    std::string upto_str;
    auto* c_cp = app.add_subcommand("checkpoint", "stream summatory checkpoints to CSV (resumable)");
    c_cp->add_option("--upto", upto_str, "largest X")->required();

    std::string id;
    bool all = false;
    std::string lo_str, hi_str;
    auto* c_vf = app.add_subcommand("verify", "verify catalog bounds");
    c_vf->add_option("--id", id, "bound id");
    c_vf->add_flag("--all", all, "verify every desk-scannable bound");
    c_vf->add_option("--lo", lo_str, "override scan lower end");
    c_vf->add_option("--hi", hi_str, "override scan upper end");

    auto* c_ct = app.add_subcommand("constants", "recompute pinned constants");

    std::string alo_str, ahi_str, xlo_str, xhi_str, recompute_str = "1000000";
    double r4_bound = 0;
    auto* c_r4 = app.add_subcommand("scan-r4", "incremental windowed scan of Sigma Lambda(a) R(X/a)");
    c_r4->add_option("--a-lo", alo_str)->required();
    c_r4->add_option("--a-hi", ahi_str)->required();
    c_r4->add_option("--x-lo", xlo_str)->required();
    c_r4->add_option("--x-hi", xhi_str)->required();
    c_r4->add_option("--bound", r4_bound, "max-ratio bound to gate the exit code on");
    c_r4->add_option("--recompute-every", recompute_str, "steps between exact recomputations");

    std::string report_dir;
    auto* c_rp = app.add_subcommand("report", "aggregate stored JSON reports");
    c_rp->add_option("--dir", report_dir, "directory of report JSON files")->required();

    std::string dump_kind, dlo_str, dhi_str;
    auto* c_dm = app.add_subcommand("dump", "debug CSV dump of sieve output");
    c_dm->add_option("--kind", dump_kind, "mu | mangoldt")->required();
    c_dm->add_option("--lo", dlo_str)->required();
    c_dm->add_option("--hi", dhi_str)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        cfg.segment_size = parse_count(seg_str);
        cfg.stride = parse_count(stride_str);
        cfg.shadow = precision == "shadow";
        if (!lo_str.empty()) cfg.lo_override = parse_count(lo_str);
        if (!hi_str.empty()) cfg.hi_override = parse_count(hi_str);
        cfg.validate();

        if (c_cp->parsed()) return cmd_checkpoint(cfg, parse_count(upto_str));
        if (c_vf->parsed()) {
            if (all == id.empty()) {   // exactly one of --id / --all
                std::fprintf(stderr, "verify: need exactly one of --id or --all\n");
                return 64;
            }
            return cmd_verify(cfg, id, all);
        }
        if (c_ct->parsed()) return cmd_constants(cfg);
        if (c_r4->parsed())
            return cmd_scan_r4(cfg, parse_count(alo_str), parse_count(ahi_str), parse_count(xlo_str),
                               parse_count(xhi_str), r4_bound, parse_count(recompute_str));
        if (c_rp->parsed()) return cmd_report(cfg, report_dir);
        if (c_dm->parsed()) return cmd_dump(cfg, dump_kind, parse_count(dlo_str), parse_count(dhi_str));
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 64;
}
