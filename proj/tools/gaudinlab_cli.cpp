#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gaudinlab/cli.hpp"

namespace {

using namespace gaudinlab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void emit(const std::string& out_dir, const std::string& filename, const std::string& content) {
    if (out_dir.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + filename + " in " + out_dir);
    f << content;
    std::cerr << "wrote " << (std::filesystem::path(out_dir) / filename).string() << "\n";
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) out.push_back(tok);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact laboratory for the twisted Gaudin model and its classical shadow"};
    app.require_subcommand(1);

    std::string config_path, out_dir, check_list, sector_text;
    std::uint64_t seed = 0;
    bool seed_set = false, float_mode = false;
    long state = 0;
    double t_max = 0.1;
    int steps = 100;

    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--out", out_dir, "output directory (default: stdout)");
    app.add_flag("--float", float_mode, "judge identity checks by float residual with tolerance");

    app.fallthrough();
    auto* verify = app.add_subcommand("verify", "run the operator-identity verification suite");
    verify->fallthrough();
    verify->add_option("--check", check_list, "comma-separated check names (default: all)");

    auto* spectrum = app.add_subcommand("spectrum", "solve one weight sector by both pipelines");
    spectrum->fallthrough();
    spectrum->add_option("--sector", sector_text, "sector label a1,...,aN")->required();

    auto* dynamics = app.add_subcommand("dynamics", "tau-root trajectories vs the integrated flow");
    dynamics->fallthrough();
    dynamics->add_option("--sector", sector_text, "sector label a1,...,aN")->required();
    dynamics->add_option("--state", state, "eigenstate index within the sector");
    dynamics->add_option("--tmax", t_max, "time window end");
    dynamics->add_option("--steps", steps, "trajectory grid steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    auto start = std::chrono::steady_clock::now();
    int status = kExitOk;
    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (seed_set) cfg.seed = seed;

        if (verify->parsed()) {
            json rep = cmd_verify(cfg, split_csv(check_list), float_mode);
            emit(out_dir, "verify.json", rep.dump(2));
            if (!rep["all_pass"].get<bool>()) status = kExitCheckFail;
        } else if (spectrum->parsed()) {
            json rep = cmd_spectrum(cfg, parse_sector(cfg, sector_text));
            emit(out_dir, "spectrum.json", rep.dump(2));
            if (!rep["pass"].get<bool>()) status = kExitCheckFail;
        } else if (dynamics->parsed()) {
            DynamicsOutput out = cmd_dynamics(cfg, parse_sector(cfg, sector_text), state, t_max, steps);
            emit(out_dir, "trajectory.csv", out.trajectory_csv);
            emit(out_dir, "conservation.csv", out.conservation_csv);
            emit(out_dir, "dynamics.json", out.summary.dump(2));
            if (out.summary["aborted"].get<bool>()) status = kExitRuntime;
            else if (!out.summary["pass"].get<bool>()) status = kExitCheckFail;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "elapsed: " << elapsed << " s\n";
    return status;
}
