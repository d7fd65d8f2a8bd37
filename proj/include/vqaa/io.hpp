#pragma once

// On-disk formats. JSON Lines for per-iteration traces and eigenstate
// snapshots, CSV for summaries. Every record or row carries
// `schema_version`; see docs/file_formats.md.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "vqaa/harness.hpp"

namespace vqaa::io {

inline constexpr int schema_version = 1;

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fixed-precision formatting so summaries diff cleanly.
inline std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw io_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

// -- trace records ----------------------------------------------------------

inline nlohmann::ordered_json to_json(const TraceRecord& r, const std::string& run_id) {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["record"] = "iteration";
    if (!run_id.empty()) j["run_id"] = run_id;
    j["iteration"] = r.iteration;
    j["evaluations"] = r.evaluations;
    j["cost"] = r.cost;
    j["entropy"] = r.entropy;
    j["concurrence"] = r.concurrence;
    j["restarted"] = r.restarted;
    j["ground_prob"] = r.ground_prob;
    return j;
}

struct TraceLine {
    std::string run_id;
    TraceRecord record;

    friend bool operator==(const TraceLine&, const TraceLine&) = default;
};

inline void write_trace(std::ostream& out, const std::vector<TraceRecord>& records,
                        const std::string& run_id = {}) {
    for (const TraceRecord& r : records) out << to_json(r, run_id).dump() << '\n';
}

struct EigenSnapshot {
    std::string run_id;
    double final_cost = 0.0;
    std::vector<EigenstateProbability> states;
};

inline nlohmann::ordered_json to_json(const EigenSnapshot& s) {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["record"] = "snapshot";
    if (!s.run_id.empty()) j["run_id"] = s.run_id;
    j["final_cost"] = s.final_cost;
    auto& arr = j["states"] = nlohmann::ordered_json::array();
    for (const auto& e : s.states) {
        arr.push_back({{"ciphertext", e.ciphertext}, {"energy", e.energy},
                       {"probability", e.probability}});
    }
    return j;
}

inline EigenSnapshot make_snapshot(const std::string& run_id, const AttackProblem& problem,
                                   const AttackTrace& trace) {
    const Statevector s = build_ansatz_state(problem.spec, trace.final_params);
    return {run_id, trace.final_cost, eigenstate_probabilities(s, problem)};
}

/// Parsed content of a JSON Lines trace file.
struct TraceFile {
    std::vector<TraceLine> iterations;
    std::vector<EigenSnapshot> snapshots;
};

inline TraceFile parse_trace(std::istream& in, const std::string& source = "<stream>") {
    TraceFile out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            if (j.at("schema_version").get<int>() != schema_version) {
                throw io_error("unsupported schema_version");
            }
            const std::string kind = j.at("record").get<std::string>();
            const std::string run_id = j.value("run_id", std::string{});
            if (kind == "iteration") {
                TraceRecord r;
                r.iteration = j.at("iteration").get<int>();
                r.evaluations = j.at("evaluations").get<int>();
                r.cost = j.at("cost").get<double>();
                r.entropy = j.at("entropy").get<double>();
                r.concurrence = j.at("concurrence").get<double>();
                r.restarted = j.at("restarted").get<bool>();
                r.ground_prob = j.at("ground_prob").get<double>();
                out.iterations.push_back({run_id, r});
            } else if (kind == "snapshot") {
                EigenSnapshot s{run_id, j.at("final_cost").get<double>(), {}};
                for (const auto& e : j.at("states")) {
                    s.states.push_back({e.at("ciphertext").get<std::uint32_t>(),
                                        e.at("energy").get<double>(),
                                        e.at("probability").get<double>()});
                }
                out.snapshots.push_back(std::move(s));
            } else {
                throw io_error("unknown record type '" + kind + "'");
            }
        } catch (const std::exception& e) {
            throw io_error(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline TraceFile read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    return parse_trace(in, path.string());
}

// -- batch outputs ----------------------------------------------------------

inline void write_summary_csv(std::ostream& out, const std::vector<BatchSummary>& rows) {
    out << "schema_version,ansatz,variant,optimizer,degree,simulations,maximum,minimum,average,"
           "success_rate,average_evaluations\n";
    for (const BatchSummary& s : rows) {
        out << schema_version << ',' << to_string(s.config.spec.family) << ','
            << to_string(s.config.spec.variant) << ',' << to_string(s.config.optimizer) << ','
            << s.config.degree << ',' << s.simulations << ',' << s.maximum << ',' << s.minimum
            << ',' << fixed(s.average, 2) << ',' << fixed(s.success_rate, 4) << ','
            << fixed(s.average_evaluations, 2) << '\n';
    }
}

inline void write_running_average_csv(std::ostream& out, const std::vector<BatchSummary>& rows) {
    out << "schema_version,ansatz,variant,optimizer,degree,simulations_included,average\n";
    for (const BatchSummary& s : rows) {
        for (std::size_t k = 0; k < s.running_average.size(); ++k) {
            out << schema_version << ',' << to_string(s.config.spec.family) << ','
                << to_string(s.config.spec.variant) << ',' << to_string(s.config.optimizer) << ','
                << s.config.degree << ',' << k + 1 << ',' << fixed(s.running_average[k], 4) << '\n';
        }
    }
}

inline void write_runs_csv(std::ostream& out, const std::vector<RunResult>& runs) {
    out << "schema_version,run_id,simulation,plaintext,key,ciphertext,success,found_key,"
           "iterations,evaluations,sample_draws,restarts,final_cost,final_ground_prob,"
           "final_entropy,final_concurrence,scenario\n";
    for (const RunResult& r : runs) {
        const AttackTrace& t = r.trace;
        out << schema_version << ',' << r.run_id() << ',' << r.simulation << ','
            << r.instance.plaintext.to_string() << ',' << r.instance.key.to_string() << ','
            << r.instance.ciphertext.to_string() << ',' << (t.success ? 1 : 0) << ','
            << (t.found_key ? BitBlock(sdes::key_bits, *t.found_key).to_string() : std::string{})
            << ',' << t.iterations << ',' << t.evaluations << ',' << t.sample_draws << ','
            << t.restarts << ',' << fixed(t.final_cost, 6) << ',' << fixed(t.final_ground_prob, 6)
            << ',' << fixed(t.final_metrics.entropy, 6) << ','
            << fixed(t.final_metrics.concurrence, 6) << ',' << to_char(classify_trace(t)) << '\n';
    }
}

/// One trace line per iteration per run, plus one snapshot line per run.
inline void export_traces(const std::vector<RunResult>& runs, const std::filesystem::path& traces,
                          const std::filesystem::path& snapshots) {
    {
        std::ofstream out = open_for_write(traces);
        for (const RunResult& r : runs) write_trace(out, r.trace.records, r.run_id());
        finish(out, traces);
    }
    {
        std::ofstream out = open_for_write(snapshots);
        for (const RunResult& r : runs) {
            out << to_json(make_snapshot(r.run_id(), r.problem, r.trace)).dump() << '\n';
        }
        finish(out, snapshots);
    }
}

/// Degree sweep averages and spectra next to the reference values.
inline void write_degree_csv(std::ostream& out, const std::vector<BatchSummary>& rows) {
    out << "schema_version,degree,learning_rate,restart_norm,cutoff,maximum,minimum,average,"
           "reference_average,success_rate,ground,first_excited,highest,ratio,reference_ground,"
           "reference_first_excited,reference_highest,reference_ratio\n";
    for (const BatchSummary& s : rows) {
        const int d = s.config.degree;
        const DegreeSetting& setting = degree_settings[static_cast<std::size_t>(d - 1)];
        const ReferenceSpectrum& ref = reference_spectra[static_cast<std::size_t>(d - 1)];
        const SpectrumSummary sp = GraphHamiltonian(build_graph(d), BitBlock(8, 0)).summary();
        out << schema_version << ',' << d << ',' << fixed(setting.learning_rate, 2) << ','
            << fixed(setting.restart_norm, 2) << ',' << fixed(sp.first_excited, 1) << ','
            << s.maximum << ',' << s.minimum << ',' << fixed(s.average, 2) << ','
            << fixed(setting.reference_average, 2) << ',' << fixed(s.success_rate, 4) << ','
            << fixed(sp.ground, 1) << ',' << fixed(sp.first_excited, 1) << ','
            << fixed(sp.highest, 1) << ',' << fixed(sp.ratio, 4) << ',' << fixed(ref.ground, 1)
            << ',' << fixed(ref.first_excited, 1) << ',' << fixed(ref.highest, 1) << ','
            << fixed(ref.ratio, 4) << '\n';
    }
}

inline nlohmann::ordered_json run_metadata() {
    nlohmann::ordered_json m;
    m["schema_version"] = schema_version;
    m["entangler_topology"] = "chain i->i+1 for i=0..n-2; variant A adds n-1->0";
    m["ry_convention"] = "[[cos t/2, -sin t/2], [sin t/2, cos t/2]]";
    m["qubit_order"] = "qubit 0 = left-most key bit";
    m["expectation"] = "exact";
    m["gd_step_factor"] = "r/max(|cost|,1e-9) + ln(times)/times * r0, times = evaluations so far";
    m["gd_iterations"] = "outer loop passes";
    m["nm_iterations"] = "simplex loop passes";
    m["budget"] = "objective evaluations and post-cutoff key draws share one budget";
    m["initial_domain"] = "[0, 2pi)";
    m["entropy_log_base"] = 2;
    m["scenario_b_entropy_rise"] = entropy_rise_threshold;
    m["bipartition"] = "first half | second half";
    return m;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_for_write(path);
    out << text;
    finish(out, path);
}

template <class Writer>
void write_with(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out = open_for_write(path);
    writer(out);
    finish(out, path);
}

/// Writes summary.csv, running_average.csv, runs.csv, traces.jsonl,
/// snapshots.jsonl and metadata.json under `dir`.
inline void write_batch(const std::filesystem::path& dir, const BatchResult& result,
                        nlohmann::ordered_json metadata, bool include_traces = true) {
    write_with(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, result.summaries); });
    write_with(dir / "running_average.csv",
               [&](std::ostream& o) { write_running_average_csv(o, result.summaries); });
    write_with(dir / "runs.csv", [&](std::ostream& o) { write_runs_csv(o, result.runs); });
    if (include_traces) export_traces(result.runs, dir / "traces.jsonl", dir / "snapshots.jsonl");
    write_text(dir / "metadata.json", metadata.dump(2) + "\n");
}

} // namespace vqaa::io
