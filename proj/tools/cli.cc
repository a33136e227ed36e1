// Copyright 2026 The serq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "serq/builders.h"
#include "serq/golden.h"
#include "serq/postselection.h"
#include "serq/qkd.h"

namespace serq_cli {

namespace {

using nlohmann::json;
using namespace serq;

/// Raised for configuration problems detected after flag parsing; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, BsConvention> kConventions{{"symmetric", BsConvention::Symmetric},
                                                       {"paper", BsConvention::PaperSurfacePhases}};

/// Flags shared by the commands that emit data.
struct OutputFlags {
    std::string out_path;
    std::string format = "csv";

    void add_to(CLI::App *cmd) {
        cmd->add_option("--out", out_path, "Write data to this file instead of stdout");
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }

    bool is_json() const {
        return format == "json";
    }

    /// Writes `data` to --out or `out`. The file is only touched once the data is complete.
    void emit(const std::string &data, std::ostream &out) const {
        if (out_path.empty()) {
            out << data;
            return;
        }
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot open output file '" + out_path + "' for writing");
        }
        f << data;
        f.flush();
        if (!f) {
            throw UsageError("failed writing output file '" + out_path + "'");
        }
    }
};

/// Flags describing the encoder/decoder pair.
struct SchemeFlags {
    int stages = 1;
    std::string convention = "symmetric";
    Tick dT = 0;
    Tick dTprime = 0;

    void add_to(CLI::App *cmd, bool with_stages = true) {
        if (with_stages) {
            cmd->add_option("--stages", stages, "Splitter cascade depth n (N = 2^(n+1) bins per group)")
                ->check(CLI::Range(1, 20))
                ->capture_default_str();
        }
        cmd->add_option("--convention", convention, "Beam splitter phase convention")
            ->check(CLI::IsMember({"symmetric", "paper"}))
            ->capture_default_str();
        cmd->add_option("--dT", dT, "Group delay in ticks; 0 picks max(64, 2N)")->check(CLI::NonNegativeNumber);
        cmd->add_option("--dTprime", dTprime, "Decoder V-branch delay in ticks")->check(CLI::NonNegativeNumber);
    }

    BsConvention conv() const {
        return kConventions.at(convention);
    }

    EncoderSpec encoder(int n) const {
        EncoderSpec spec = EncoderSpec::for_stages(n, conv());
        if (dT > 0) {
            spec.dT = dT;
        }
        return spec;
    }

    DecoderSpec decoder() const {
        return {dTprime, conv()};
    }

    /// Validated specs for `n` stages; failures name the flags involved.
    std::pair<EncoderSpec, DecoderSpec> specs(int n) const {
        EncoderSpec enc = encoder(n);
        DecoderSpec dec = decoder();
        try {
            enc.validate();
            dec.validate();
            check_compatible(enc, dec);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("invalid --stages/--dT/--dTprime: ") + e.what());
        }
        return {enc, dec};
    }
};

NoiseEnsemble parse_ensemble(const std::string &text) {
    try {
        return NoiseEnsemble::parse(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("invalid --ensemble: ") + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Circuit load_circuit(const std::string &path) {
    try {
        return parse_circuit(read_file(path));
    } catch (const CircuitError &e) {
        throw UsageError(path + ":" + e.what());
    }
}

/// Quotes a CSV field when it contains a separator or quote.
std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string dump_json(const json &j) {
    return j.dump(2) + "\n";
}

json noise_json(const NoiseParams &p) {
    auto f = p.to_floats();
    return json(std::vector<double>(f.begin(), f.end()));
}

// ---------------------------------------------------------------------------------------------
// golden

struct GoldenCmd {
    SchemeFlags scheme;
    OutputFlags output;
    std::uint64_t seed = 1;
    std::string encoder_file, decoder_file;

    void add_to(CLI::App &app) {
        CLI::App *cmd = app.add_subcommand("golden", "Compare simulated states with their closed forms");
        scheme.convention = "paper";
        scheme.add_to(cmd);
        output.add_to(cmd);
        cmd->add_option("--seed", seed, "Seed for the test qubit and noise sample")->capture_default_str();
        cmd->add_option("--encoder-file", encoder_file, "Check this encoder circuit instead of the built one");
        cmd->add_option("--decoder-file", decoder_file, "Check this decoder circuit instead of the built one");
    }

    int run(std::ostream &out, std::ostream &err) const {
        auto [enc, dec] = scheme.specs(scheme.stages);
        Circuit encoder = encoder_file.empty() ? build_encoder(enc) : load_circuit(encoder_file);
        Circuit decoder = decoder_file.empty() ? build_decoder(dec) : load_circuit(decoder_file);
        QubitSpec q = random_qubit(mix_seed(seed, 0));
        NoiseParams noise = sample_noise(NoiseEnsemble::haar(), mix_seed(seed, 1));

        std::vector<GoldenResult> results;
        try {
            results.push_back(check_encoder_output(encoder, enc, q));
            results.push_back(check_noisy_state(encoder, enc, q, noise));
            results.push_back(check_interferometer_front(decoder, dec, q));
        } catch (const std::exception &e) {
            throw UsageError(std::string("circuit cannot be checked: ") + e.what());
        }

        std::string data;
        if (output.is_json()) {
            json checks = json::array();
            for (const auto &r : results) {
                checks.push_back(
                    {{"check", r.name}, {"max_deviation", r.max_deviation}, {"passed", r.passed}, {"detail", r.detail}});
            }
            data = dump_json({{"tolerance", kGoldenTolerance}, {"checks", checks}});
        } else {
            data = "check,max_deviation,passed,detail\n";
            for (const auto &r : results) {
                data += r.name + "," + format_double(r.max_deviation) + "," + (r.passed ? "1" : "0") + "," +
                        csv_field(r.detail) + "\n";
            }
        }
        output.emit(data, out);

        int status = kExitOk;
        for (const auto &r : results) {
            if (!r.passed) {
                err << "FAILED " << r.name << ": max deviation " << format_double(r.max_deviation) << " ("
                    << r.detail << ")\n";
                status = kExitCheckFailed;
            }
        }
        return status;
    }
};

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepCmd {
    SchemeFlags scheme;
    OutputFlags output;
    std::string ensemble = "haar";
    std::uint64_t samples = 100;
    std::uint64_t seed = 1;

    void add_to(CLI::App &app) {
        CLI::App *cmd = app.add_subcommand("sweep", "Success probability over sampled noise");
        scheme.add_to(cmd);
        output.add_to(cmd);
        cmd->add_option("--ensemble", ensemble, "identity, haar, general or dephasing:<phi>")->capture_default_str();
        cmd->add_option("--samples", samples, "Number of noise samples")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    }

    int run(std::ostream &out, std::ostream &err) const {
        NoiseEnsemble ens = parse_ensemble(ensemble);
        auto [enc, dec] = scheme.specs(scheme.stages);
        Scheme s(enc, dec);
        SweepStats stats = success_probability_sweep(s, ens, samples, seed);

        std::string data;
        if (output.is_json()) {
            json rows = json::array();
            for (const auto &smp : stats.samples) {
                rows.push_back({{"noise", noise_json(smp.noise)},
                                {"success", smp.success},
                                {"min_fidelity", smp.min_fidelity}});
            }
            data = dump_json({{"stages", enc.stages},
                              {"ensemble", ens.name()},
                              {"seed", seed},
                              {"expected_success", s.ideal_success()},
                              {"samples", rows},
                              {"summary",
                               {{"mean_success", stats.mean_success},
                                {"max_deviation", stats.max_deviation},
                                {"min_fidelity", stats.min_fidelity}}}});
        } else {
            data = "d1_re,d1_im,g1_re,g1_im,d2_re,d2_im,g2_re,g2_im,success,min_fidelity\n";
            for (const auto &smp : stats.samples) {
                data += smp.noise.to_csv() + "," + format_double(smp.success) + "," + format_double(smp.min_fidelity) +
                        "\n";
            }
            data += "summary,mean_success," + format_double(stats.mean_success) + ",max_deviation," +
                    format_double(stats.max_deviation) + ",min_fidelity," + format_double(stats.min_fidelity) + "\n";
        }
        output.emit(data, out);
        err << "sweep: " << samples << " samples, mean success " << format_double(stats.mean_success)
            << ", expected " << format_double(s.ideal_success()) << ", max deviation "
            << format_double(stats.max_deviation) << "\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------------------------
// scaling

struct ScalingCmd {
    SchemeFlags scheme;
    OutputFlags output;
    int max_stages = 3;
    std::string ensemble = "haar";
    std::uint64_t seed = 1;

    void add_to(CLI::App &app) {
        CLI::App *cmd = app.add_subcommand("scaling", "Exact success probability for n = 1..max");
        scheme.add_to(cmd, false);
        output.add_to(cmd);
        cmd->add_option("--max-stages,--stages", max_stages, "Largest cascade depth")
            ->check(CLI::Range(1, 6))
            ->capture_default_str();
        cmd->add_option("--ensemble", ensemble, "Noise used for each row")->capture_default_str();
        cmd->add_option("--seed", seed, "Seed for the noise sample and qubit of each row")->capture_default_str();
    }

    int run(std::ostream &out, std::ostream &) const {
        NoiseEnsemble ens = parse_ensemble(ensemble);
        struct Row {
            int n;
            Tick bins;
            double success;
        };
        std::vector<Row> rows;
        for (int n = 1; n <= max_stages; n++) {
            auto [enc, dec] = scheme.specs(n);
            Scheme s(enc, dec);
            QubitSpec q = random_qubit(mix_seed(seed, 2 * static_cast<std::uint64_t>(n) + 1));
            NoiseParams noise = sample_noise(ens, mix_seed(seed, 2 * static_cast<std::uint64_t>(n)));
            rows.push_back({n, enc.bins(), total_success(analyze(s.transmit(q, noise), correction_table(s), q))});
        }
        std::string data;
        if (output.is_json()) {
            json arr = json::array();
            for (const auto &r : rows) {
                arr.push_back({{"n", r.n}, {"N", r.bins}, {"wavepackets", 2 * r.bins}, {"success", r.success}});
            }
            data = dump_json({{"rows", arr}});
        } else {
            data = "n,N,wavepackets,success\n";
            for (const auto &r : rows) {
                data += std::to_string(r.n) + "," + std::to_string(r.bins) + "," + std::to_string(2 * r.bins) + "," +
                        format_double(r.success) + "\n";
            }
        }
        output.emit(data, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------------------------
// qkd

struct QkdCmd {
    SchemeFlags scheme;
    OutputFlags output;
    std::string ensemble = "haar";
    Bb84Config cfg;

    void add_to(CLI::App &app) {
        CLI::App *cmd = app.add_subcommand("qkd", "BB84 Monte Carlo over the protected channel");
        scheme.add_to(cmd);
        output.add_to(cmd);
        cmd->add_option("--ensemble", ensemble, "identity, haar, general or dephasing:<phi>")->capture_default_str();
        cmd->add_option("--pulses", cfg.pulses, "Number of pulses")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--refresh", cfg.refresh_period, "Pulses per fresh noise sample")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--eta", cfg.eta, "Detector efficiency in (0, 1]")
            ->check(CLI::Validator(
                [](std::string &v) {
                    double x = std::stod(v);
                    return x > 0 && x <= 1 ? std::string() : "must be in (0, 1], got " + v;
                },
                "(0, 1]"))
            ->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    }

    int run(std::ostream &out, std::ostream &err) {
        scheme.specs(scheme.stages);
        cfg.stages = scheme.stages;
        cfg.convention = scheme.conv();
        cfg.dT = scheme.dT;
        cfg.dTprime = scheme.dTprime;
        cfg.ensemble = parse_ensemble(ensemble);
        try {
            cfg.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("invalid qkd configuration: ") + e.what());
        }
        Bb84Stats st = simulate_bb84(cfg);
        std::string data;
        if (output.is_json()) {
            data = dump_json({{"pulses", st.sent},
                              {"detected", st.detected},
                              {"rejected", st.rejected},
                              {"sifted", st.sifted},
                              {"errors", st.errors},
                              {"qber", st.qber},
                              {"detection_rate", st.detection_rate},
                              {"expected_rate", effective_efficiency(cfg.stages, cfg.eta)}});
        } else {
            data = Bb84Stats::csv_header() + "\n" + st.csv_row() + "\n";
        }
        output.emit(data, out);
        err << st.summary() << "; expected rate " << format_double(effective_efficiency(cfg.stages, cfg.eta)) << "\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------------------------
// circuit

struct CircuitCmd {
    SchemeFlags scheme;
    std::string builtin;
    std::string file;
    bool dump = false;
    std::uint64_t seed = 1;
    std::string out_path;

    void add_to(CLI::App &app) {
        CLI::App *cmd = app.add_subcommand("circuit", "Print a built-in circuit or check a circuit file");
        scheme.add_to(cmd);
        auto *b = cmd->add_option("--builtin", builtin, "encoder or decoder")
                      ->check(CLI::IsMember({"encoder", "decoder"}));
        auto *f = cmd->add_option("--file", file, "Circuit file to parse");
        b->excludes(f);
        cmd->add_flag("--dump", dump, "Run the circuit on a random qubit and dump the output state");
        cmd->add_option("--seed", seed, "Seed for the --dump qubit")->capture_default_str();
        cmd->add_option("--out", out_path, "Write to this file instead of stdout");
    }

    int run(std::ostream &out, std::ostream &) const {
        Circuit c;
        if (!file.empty()) {
            c = load_circuit(file);
        } else if (builtin == "decoder") {
            c = build_decoder(scheme.specs(scheme.stages).second);
        } else if (builtin == "encoder") {
            c = build_encoder(scheme.specs(scheme.stages).first);
        } else {
            throw UsageError("circuit needs --builtin or --file");
        }
        std::string data = print_circuit(c);
        if (dump) {
            try {
                data = run_dump(c);
            } catch (const std::exception &e) {
                throw UsageError(std::string("circuit cannot run: ") + e.what());
            }
        }
        OutputFlags{out_path, "csv"}.emit(data, out);
        return kExitOk;
    }

    std::string run_dump(const Circuit &c) const {
        return serq::run(c, new_state(random_qubit(seed), c.input)).dump();
    }
};

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"serq: self-error-rejecting qubit transmission simulator", "serq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "serq 0.1.0");
    GoldenCmd golden;
    SweepCmd sweep;
    ScalingCmd scaling;
    QkdCmd qkd;
    CircuitCmd circuit;
    golden.add_to(app);
    sweep.add_to(app);
    scaling.add_to(app);
    qkd.add_to(app);
    circuit.add_to(app);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand("golden")) {
            return golden.run(out, err);
        }
        if (app.got_subcommand("sweep")) {
            return sweep.run(out, err);
        }
        if (app.got_subcommand("scaling")) {
            return scaling.run(out, err);
        }
        if (app.got_subcommand("qkd")) {
            return qkd.run(out, err);
        }
        return circuit.run(out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace serq_cli
