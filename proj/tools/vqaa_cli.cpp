// Command-line front end: cipher, spectrum, single attacks and batches.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vqaa/attack.hpp"
#include "vqaa/harness.hpp"
#include "vqaa/io.hpp"
#include "vqaa/sdes.hpp"

namespace {

using namespace vqaa;

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--learning-rate", o.learning_rate, "GD learning rate r");
    cmd->add_option("--alpha", o.alpha, "Nelder-Mead amplification factor");
    cmd->add_option("--restart-norm", o.restart_norm, "GD restart gradient norm");
    cmd->add_option("--restart-spread", o.restart_spread, "Nelder-Mead restart value spread");
    cmd->add_option("--budget", o.budget, "evaluation + measurement budget");
    cmd->add_option("--cutoff", o.cutoff, "energy cutoff (default: first excited energy)");
}

struct AttackArgs {
    std::string plaintext;
    std::string key;
    std::string ansatz = "ycz";
    std::string variant = "A";
    std::string optimizer = "gd";
    int degree = 3;
    int layers = 1;
    std::uint64_t seed = 1;
    Overrides overrides;
};

struct PreparedAttack {
    AttackProblem problem;
    OptimizerChoice choice;
};

PreparedAttack prepare(const AttackArgs& a) {
    const AnsatzSpec spec{parse_family(a.ansatz), parse_variant(a.variant), a.layers,
                          sdes::key_bits};
    AttackProblem problem = make_problem(BitBlock::parse(a.plaintext, 8),
                                         BitBlock::parse(a.key, 10), a.degree, spec);
    OptimizerChoice choice = OptimizerChoice::defaults(parse_optimizer(a.optimizer), problem);
    a.overrides.apply(problem, choice);
    return {std::move(problem), choice};
}

void print_outcome(const AttackTrace& t) {
    std::cout << "success=" << (t.success ? "true" : "false")
              << " reached_cutoff=" << (t.reached_cutoff ? "true" : "false")
              << " iterations=" << t.iterations << " evaluations=" << t.evaluations
              << " sample_draws=" << t.sample_draws << " restarts=" << t.restarts
              << " final_cost=" << io::fixed(t.final_cost, 6)
              << " ground_prob=" << io::fixed(t.final_ground_prob, 6) << " scenario="
              << to_char(classify_trace(t));
    if (t.found_key) std::cout << " key=" << BitBlock(sdes::key_bits, *t.found_key).to_string();
    std::cout << '\n';
}

AttackArgs attack_args_from_json(const nlohmann::json& j) {
    AttackArgs a;
    a.plaintext = j.at("plaintext").get<std::string>();
    a.key = j.at("key").get<std::string>();
    a.ansatz = j.value("ansatz", a.ansatz);
    a.variant = j.value("variant", a.variant);
    a.optimizer = j.value("optimizer", a.optimizer);
    a.degree = j.value("degree", a.degree);
    a.layers = j.value("layers", a.layers);
    a.seed = j.value("seed", a.seed);
    auto opt = [&j](const char* name, auto& field) {
        if (j.contains(name)) field = j.at(name).get<typename std::decay_t<decltype(field)>::value_type>();
    };
    opt("learning_rate", a.overrides.learning_rate);
    opt("alpha", a.overrides.alpha);
    opt("restart_norm", a.overrides.restart_norm);
    opt("restart_spread", a.overrides.restart_spread);
    opt("budget", a.overrides.budget);
    opt("cutoff", a.overrides.cutoff);
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational key-search experiments on S-DES"};
    app.require_subcommand(1);

    // encrypt / decrypt
    std::string plaintext, ciphertext, key;
    auto* enc = app.add_subcommand("encrypt", "Encrypt one 8-bit block");
    enc->add_option("--plaintext", plaintext, "8-bit binary string")->required();
    enc->add_option("--key", key, "10-bit binary string")->required();
    auto* dec = app.add_subcommand("decrypt", "Decrypt one 8-bit block");
    dec->add_option("--ciphertext", ciphertext, "8-bit binary string")->required();
    dec->add_option("--key", key, "10-bit binary string")->required();

    // spectrum
    int spectrum_degree = 3;
    std::string spectrum_cipher = "00000000";
    bool spectrum_full = false;
    std::string spectrum_csv;
    auto* spec_cmd = app.add_subcommand("spectrum", "Energy levels of the graph Hamiltonian");
    spec_cmd->add_option("--degree", spectrum_degree, "graph degree 1..7");
    spec_cmd->add_option("--ciphertext", spectrum_cipher, "8-bit binary string");
    spec_cmd->add_flag("--full", spectrum_full, "print the sorted spectrum as CSV (index,energy)");
    spec_cmd->add_option("--csv", spectrum_csv, "write the sorted spectrum CSV to this file");

    // attack
    AttackArgs attack;
    std::string trace_path;
    auto* att = app.add_subcommand("attack", "Run one attack on a known pair");
    att->add_option("--plaintext", attack.plaintext)->required();
    att->add_option("--key", attack.key)->required();
    att->add_option("--ansatz", attack.ansatz, "ycx | ycy | ycz");
    att->add_option("--variant", attack.variant, "A | B");
    att->add_option("--optimizer", attack.optimizer, "gd | nm");
    att->add_option("--degree", attack.degree);
    att->add_option("--layers", attack.layers);
    att->add_option("--seed", attack.seed);
    att->add_option("--trace", trace_path, "write per-iteration records (JSON Lines)");
    add_overrides(att, attack.overrides);

    // batch
    auto* batch = app.add_subcommand("batch", "Seeded experiment batches");
    batch->require_subcommand(1);
    ExperimentConfig t2;
    std::string t2_out;
    bool t2_no_traces = false;
    std::optional<int> t2_workers;
    auto* table2 = batch->add_subcommand("table2", "All ansatz/optimizer combinations");
    table2->add_option("--sims", t2.simulations);
    table2->add_option("--seed", t2.master_seed);
    table2->add_option("--degree", t2.degree);
    table2->add_option("--layers", t2.layers);
    table2->add_option("--out", t2_out)->required();
    table2->add_option("--workers", t2_workers, "overrides VQAA_WORKERS");
    table2->add_flag("--no-traces", t2_no_traces, "skip traces.jsonl and snapshots.jsonl");
    add_overrides(table2, t2.overrides);

    int deg_sims = 15;
    std::uint64_t deg_seed = 2022;
    std::string deg_out;
    std::optional<int> deg_workers;
    bool deg_no_traces = false;
    auto* degrees = batch->add_subcommand("degrees", "Graph degree sweep (Y-Cz A, GD)");
    degrees->add_option("--sims", deg_sims);
    degrees->add_option("--seed", deg_seed);
    degrees->add_option("--out", deg_out)->required();
    degrees->add_option("--workers", deg_workers, "overrides VQAA_WORKERS");
    degrees->add_flag("--no-traces", deg_no_traces);

    // trace
    std::string trace_config, trace_out;
    auto* tr = app.add_subcommand("trace", "Single attack from a JSON config, with snapshot");
    tr->add_option("--config", trace_config, "JSON file with plaintext, key, ansatz, ...")
        ->required();
    tr->add_option("--out", trace_out, "JSON Lines output")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enc) {
            std::cout << sdes::encrypt(BitBlock::parse(plaintext, 8), BitBlock::parse(key, 10))
                             .to_string()
                      << '\n';
        } else if (*dec) {
            std::cout << sdes::decrypt(BitBlock::parse(ciphertext, 8), BitBlock::parse(key, 10))
                             .to_string()
                      << '\n';
        } else if (*spec_cmd) {
            const GraphHamiltonian h(build_graph(spectrum_degree),
                                     BitBlock::parse(spectrum_cipher, 8));
            const SpectrumSummary s = h.summary();
            std::cout << "degree=" << spectrum_degree << " ground=" << io::fixed(s.ground, 4)
                      << " first_excited=" << io::fixed(s.first_excited, 4)
                      << " highest=" << io::fixed(s.highest, 4)
                      << " ratio=" << io::fixed(s.ratio, 4) << '\n';
            auto write_csv = [&h](std::ostream& out) {
                std::vector<std::uint32_t> idx(basis_states);
                std::iota(idx.begin(), idx.end(), 0U);
                std::stable_sort(idx.begin(), idx.end(), [&h](auto a, auto b) {
                    return h.energy(a) < h.energy(b);
                });
                out << "index,energy\n";
                for (auto i : idx) out << i << ',' << io::fixed(h.energy(i), 1) << '\n';
            };
            if (spectrum_full) write_csv(std::cout);
            if (!spectrum_csv.empty()) io::write_with(spectrum_csv, write_csv);
        } else if (*att) {
            const PreparedAttack p = prepare(attack);
            const AttackTrace t = run_attack(p.problem, p.choice, attack.seed);
            if (!trace_path.empty()) {
                io::write_with(trace_path, [&](std::ostream& o) { io::write_trace(o, t.records); });
            }
            print_outcome(t);
        } else if (*table2) {
            t2.workers = t2_workers.value_or(default_workers());
            const BatchResult r = run_table2(t2);
            auto meta = io::run_metadata();
            meta["batch"] = "table2";
            meta["simulations"] = t2.simulations;
            meta["master_seed"] = t2.master_seed;
            meta["degree"] = t2.degree;
            meta["layers"] = t2.layers;
            io::write_batch(t2_out, r, meta, !t2_no_traces);
            io::write_summary_csv(std::cout, r.summaries);
        } else if (*degrees) {
            const BatchResult r =
                run_degree_sweep(deg_sims, deg_seed, deg_workers.value_or(default_workers()));
            auto meta = io::run_metadata();
            meta["batch"] = "degrees";
            meta["simulations"] = deg_sims;
            meta["master_seed"] = deg_seed;
            io::write_batch(deg_out, r, meta, !deg_no_traces);
            io::write_with(std::filesystem::path(deg_out) / "degrees.csv",
                           [&](std::ostream& o) { io::write_degree_csv(o, r.summaries); });
            io::write_degree_csv(std::cout, r.summaries);
        } else if (*tr) {
            std::ifstream in(trace_config);
            if (!in) throw io::io_error("cannot open " + trace_config);
            const AttackArgs args = attack_args_from_json(nlohmann::json::parse(in));
            const PreparedAttack p = prepare(args);
            const AttackTrace t = run_attack(p.problem, p.choice, args.seed);
            io::write_with(trace_out, [&](std::ostream& o) {
                io::write_trace(o, t.records);
                o << io::to_json(io::make_snapshot({}, p.problem, t)).dump() << '\n';
            });
            print_outcome(t);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
