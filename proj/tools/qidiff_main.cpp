#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qidiff/report.hpp"

namespace {

using namespace qidiff;
using nlohmann::json;

void emit(const json& body, double elapsed_ms, const std::string& out_path) {
    json report = body;
    report["timing"] = json{{"elapsed_ms", elapsed_ms}};
    std::string text = report::dump(report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write report to '" + out_path + "'");
        out << text;
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

cipher::FunctionView builtin_function(const std::string& name, int n, int m) {
    if (name == "identity") return cipher::make_view(n, n, [](uint64_t x) { return x; }, "builtin/identity", 0);
    if (name == "const0") return cipher::make_view(n, m, [](uint64_t) { return 0ull; }, "builtin/const0", 0);
    if (name == "and")
        return cipher::make_view(n, 1, [n](uint64_t x) { return (x >> (n - 1)) & (x >> (n - 2)) & 1; },
                                 "builtin/and", 0);
    throw ConfigError("unknown builtin function '" + name + "'");
}

int run_selftest() {
    // A handful of known answers, enough to confirm the install works.
    auto f_and = cipher::make_view(2, 1, [](uint64_t x) { return (x >> 1) & x & 1; }, "selftest/and", 0);
    auto spectrum = qsim::walsh_spectrum(f_and);
    if (spectrum != std::vector<int64_t>{2, 2, 2, -2}) {
        std::cerr << "selftest: walsh spectrum mismatch\n";
        return 1;
    }
    auto dist = qsim::exact_distribution(f_and);
    if (std::abs(dist.pmf[0] - 0.5) > 1e-12) {
        std::cerr << "selftest: distribution mismatch\n";
        return 1;
    }
    auto est = resources::estimate(resources::Algorithm::full, 64, 80, 25, 3);
    if (resources::u128_str(est.cnot) != "1916928" || resources::u128_str(est.hadamard) != "12460032") {
        std::cerr << "selftest: estimate mismatch\n";
        return 1;
    }
    finder::SearchParams params;
    params.c = 3;
    params.seed = 1;
    auto id_view = cipher::make_view(4, 4, [](uint64_t x) { return x; }, "selftest/id4", 0);
    auto res = finder::find_struct(id_view, params);
    auto truth = oracle::brute_linear_structures(id_view);
    if (!(gf2::subspace_of(truth, res.space) && gf2::subspace_of(res.space, truth))) {
        std::cerr << "selftest: linear structure recovery mismatch\n";
        return 1;
    }
    std::cout << "selftest ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simon-subroutine search for impossible differentials of toy block ciphers"};
    app.require_subcommand(1);

    std::string cipher_path, out_path, algo = "truncated", backend = "fourier", direction = "forward";
    std::string view_side = "prefix", function_name;
    int c = 4, rounds = 1, workers = 0, bit = 0, fn_n = 4, fn_m = 4;
    uint64_t seed = 0, cap = 1ull << 20;
    double e0 = -1.0;
    bool verify = false;

    auto* find = app.add_subcommand("find", "run an impossible-differential search");
    find->add_option("--cipher", cipher_path, "cipher config JSON")->required();
    find->add_option("--algo", algo, "full | truncated")->check(CLI::IsMember({"full", "truncated"}));
    find->add_option("--c", c, "subroutine repetition constant");
    find->add_option("--e0", e0, "asserted bound on theta, in [0,1)");
    find->add_option("--seed", seed, "RNG seed (recorded in the report)");
    find->add_option("--backend", backend, "fourier | statevector")
        ->check(CLI::IsMember({"fourier", "statevector"}));
    find->add_flag("--verify", verify, "check each record against the exhaustive oracle");
    find->add_option("--workers", workers, "worker threads (0 = auto, env QIDIFF_WORKERS)");
    find->add_option("--cap", cap, "solution-space enumeration cap");
    find->add_option("--out", out_path, "report path (default stdout)");

    auto* orc = app.add_subcommand("oracle", "exhaustive classical baselines");
    orc->require_subcommand(1);
    auto add_common = [&](CLI::App* sub, bool needs_cipher) {
        if (needs_cipher) sub->add_option("--cipher", cipher_path, "cipher config JSON");
        sub->add_option("--workers", workers, "worker threads");
        sub->add_option("--out", out_path, "report path (default stdout)");
    };
    auto* orc_struct = orc->add_subcommand("structures", "linear structure space of a keyed view");
    add_common(orc_struct, true);
    orc_struct->add_option("--rounds", rounds, "rounds in the view");
    orc_struct->add_option("--view", view_side, "prefix | suffix")->check(CLI::IsMember({"prefix", "suffix"}));
    orc_struct->add_option("--bit", bit, "restrict to output bit i (0 = whole view)");
    orc_struct->add_option("--function", function_name, "builtin test function instead of a cipher view");
    orc_struct->add_option("--n", fn_n, "builtin function input bits");
    orc_struct->add_option("--m", fn_m, "builtin function output bits");
    auto* orc_theta = orc->add_subcommand("theta", "exact theta of a keyed view");
    add_common(orc_theta, true);
    orc_theta->add_option("--rounds", rounds, "rounds in the view");
    orc_theta->add_option("--view", view_side, "prefix | suffix")->check(CLI::IsMember({"prefix", "suffix"}));
    auto* orc_trunc = orc->add_subcommand("truncated", "probability-1 truncated differentials");
    add_common(orc_trunc, true);
    orc_trunc->add_option("--rounds", rounds, "rounds covered");
    orc_trunc->add_option("--direction", direction, "forward | backward")
        ->check(CLI::IsMember({"forward", "backward"}));
    auto* orc_impo = orc->add_subcommand("impossible", "exhaustive impossible differentials");
    add_common(orc_impo, true);

    auto* est_cmd = app.add_subcommand("estimate", "quantum resource accounting");
    uint64_t en = 0, em = 0, er = 0, ec = 0;
    est_cmd->add_option("--algo", algo, "full | truncated")->check(CLI::IsMember({"full", "truncated"}));
    est_cmd->add_option("--n", en, "block size")->required();
    est_cmd->add_option("--m", em, "key size")->required();
    est_cmd->add_option("--r", er, "round count")->required();
    est_cmd->add_option("--c", ec, "repetition constant")->required();
    est_cmd->add_option("--out", out_path, "report path (default stdout)");

    auto* self = app.add_subcommand("selftest", "quick internal checks");
    (void)self;

    CLI11_PARSE(app, argc, argv);

    try {
        Timer timer;
        if (find->parsed()) {
            auto spec = cipher::load_cipher_file(cipher_path);
            finder::SearchParams params;
            params.c = c;
            if (e0 >= 0) params.e0 = e0;
            params.backend = backend == "fourier" ? qsim::Backend::fourier : qsim::Backend::statevector;
            params.seed = seed;
            params.enumeration_cap = cap;
            params.verify_with_oracle = verify;
            params.workers = workers;
            std::string warn = params.c_warning();
            if (!warn.empty()) std::cerr << "warning: " << warn << "\n";
            auto result = algo == "full" ? finder::find_impo_diff(spec, params) : finder::find_impo_diff2(spec, params);
            emit(report::find_report(spec, params, result), timer.ms(), out_path);
        } else if (orc_struct->parsed()) {
            if (!function_name.empty()) {
                auto view = builtin_function(function_name, fn_n, fn_m);
                auto space = oracle::brute_linear_structures(view, workers);
                emit(report::structures_report("builtin/" + function_name, space), timer.ms(), out_path);
            } else {
                if (cipher_path.empty()) throw ConfigError("oracle structures needs --cipher or --function");
                auto spec = cipher::load_cipher_file(cipher_path);
                auto view = view_side == "prefix" ? cipher::prefix_view(spec, rounds)
                                                  : cipher::suffix_inverse_view(spec, rounds);
                if (bit > 0) view = cipher::component_view(view, bit);
                auto space = oracle::brute_linear_structures(view, workers);
                emit(report::structures_report(view.fingerprint, space), timer.ms(), out_path);
            }
        } else if (orc_theta->parsed()) {
            if (cipher_path.empty()) throw ConfigError("oracle theta needs --cipher");
            auto spec = cipher::load_cipher_file(cipher_path);
            auto view = view_side == "prefix" ? cipher::prefix_view(spec, rounds)
                                              : cipher::suffix_inverse_view(spec, rounds);
            auto theta = oracle::brute_theta(view, workers);
            emit(report::theta_report(spec, rounds, view_side == "suffix", theta), timer.ms(), out_path);
        } else if (orc_trunc->parsed()) {
            if (cipher_path.empty()) throw ConfigError("oracle truncated needs --cipher");
            auto spec = cipher::load_cipher_file(cipher_path);
            auto dir = direction == "forward" ? oracle::Direction::forward : oracle::Direction::backward;
            auto entries = oracle::brute_prob1_truncated(spec, rounds, dir, workers);
            emit(report::truncated_report(spec, rounds, dir, entries), timer.ms(), out_path);
        } else if (orc_impo->parsed()) {
            if (cipher_path.empty()) throw ConfigError("oracle impossible needs --cipher");
            auto spec = cipher::load_cipher_file(cipher_path);
            auto ids = oracle::brute_impossible_differentials(spec, workers);
            emit(report::impossible_report(spec, ids), timer.ms(), out_path);
        } else if (est_cmd->parsed()) {
            auto est = resources::estimate(
                algo == "full" ? resources::Algorithm::full : resources::Algorithm::truncated, en, em, er, ec);
            emit(report::estimate_report(est), timer.ms(), out_path);
        } else if (self->parsed()) {
            return run_selftest();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::feasibility ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
