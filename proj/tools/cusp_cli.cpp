#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cusp/invariants.hpp"

namespace {

using cusp::CurveInput;
using cusp::Json;

CurveInput load_input(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        cusp::fail("InputError", "cannot open " + path);
    Json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        cusp::fail("InputError", std::string("bad JSON: ") + e.what());
    }
    return cusp::parse_curve_input(j);
}

int exit_code_for(const cusp::Error& e)
{
    if (e.kind == "InputError" || e.kind == "NotCusp" || e.kind == "NotCoprime")
        return 1;
    return 2;
}

void print_json(const Json& j, bool pretty)
{
    std::cout << j.dump(pretty ? 2 : -1) << "\n";
}

std::string cell(const Json& row, const char* key, size_t i)
{
    std::ostringstream os;
    os << row[key][i];
    return os.str();
}

void print_table(const Json& rep)
{
    const Json& t = rep["structure_table"];
    std::cout << "lambda basis: " << rep["lambda_basis"].dump() << "\n";
    auto width = [](const std::string& key) {
        return key.size() <= 2 ? 6 : static_cast<int>(key.size()) + 3;
    };
    const std::vector<std::string> keys{"u_n", "u_m", "l_n", "l_m", "a",  "b",
                                        "t_n", "t_m", "t",   "t_tilde"};
    std::cout << "  i |";
    for (const auto& key : keys)
        std::cout << std::setw(width(key)) << key;
    std::cout << std::setw(6) << "k_n" << std::setw(6) << "k_m" << "\n";
    size_t rows = t["u_n"].size();
    for (size_t i = 0; i < rows; ++i) {
        std::cout << std::setw(3) << (i + 1) << " |";
        for (const auto& key : keys)
            std::cout << std::setw(width(key)) << cell(t, key.c_str(), i);
        std::cout << std::setw(6) << t["k_n"][i].dump() << std::setw(6) << t["k_m"][i].dump();
        std::cout << "\n";
    }
    std::cout << "conductor of Lambda: " << t["conductor_of_lambda"] << "\n";
}

void print_invariants_pretty(const Json& rep)
{
    std::cout << "cusp (n, m) = (" << rep["semigroup"]["n"] << ", " << rep["semigroup"]["m"]
              << "), conductor " << rep["semigroup"]["conductor"] << "\n";
    print_table(rep);
    std::cout << "saito pair at D_C: " << rep["saito_pair_DC"].dump() << "\n";
    std::cout << "saito pair at D_1: [" << rep["saito_pair_D1"]["s1"] << ", "
              << rep["saito_pair_D1"]["s1_tilde"] << "]\n";
    std::cout << "mu - tau = " << rep["mu_minus_tau"] << "\n";
    std::cout << "saito criterion: "
              << (rep["saito_criterion"]["ok"].get<bool>() ? "passed" : "FAILED") << " (unit "
              << rep["saito_criterion"]["unit_constant"] << ")\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact semimodules of differential values and Saito bases of plane cusps"};
    app.require_subcommand(1);

    std::string input, input_dir;
    long long truncation = 0, degree_bound = 0;
    unsigned long long seed = 0;
    bool emit_forms = false, pretty = false;
    long long sm_n = 0, sm_m = 0;
    std::vector<long long> sm_lambdas;

    auto add_curve_opts = [&](CLI::App* cmd, bool batch = false) {
        cmd->add_option("--input", input, "curve input JSON file");
        if (batch)
            cmd->add_option("--input-dir", input_dir, "directory of curve JSON files");
        cmd->add_option("--truncation", truncation, "working truncation override");
        cmd->add_flag("--pretty", pretty, "human-readable output");
    };

    CLI::App* inv = app.add_subcommand("invariants", "full invariant report for a curve");
    add_curve_opts(inv, true);
    inv->add_option("--degree-bound", degree_bound, "degree cap for the D_1 jet search");
    inv->add_flag("--emit-forms", emit_forms, "include printable 1-forms in the report");

    CLI::App* sem = app.add_subcommand("semimodule", "structure table of a cuspidal semimodule");
    sem->add_option("--n", sm_n, "smaller semigroup generator")->required();
    sem->add_option("--m", sm_m, "larger semigroup generator")->required();
    sem->add_option("--lambdas", sm_lambdas, "basis elements lambda_{-1},lambda_0,...")
        ->required()
        ->delimiter(',');
    sem->add_flag("--pretty", pretty, "human-readable output");

    CLI::App* sai = app.add_subcommand("saito", "Saito basis and criterion witness");
    add_curve_opts(sai);

    CLI::App* d1 = app.add_subcommand("saito-pair-d1", "Saito pair at the first divisor");
    add_curve_opts(d1);
    d1->add_option("--degree-bound", degree_bound, "degree cap for the jet search");

    CLI::App* chk = app.add_subcommand("check", "cross-checks and randomized round trips");
    add_curve_opts(chk);
    chk->add_option("--seed", seed, "seed for the randomized checks");

    CLI11_PARSE(app, argc, argv);

    auto fill_overrides = [&](CurveInput& in) {
        if (truncation > 0)
            in.truncation = truncation;
        if (degree_bound > 0)
            in.degree_bound = degree_bound;
        in.emit_forms = emit_forms;
    };

    try {
        if (inv->parsed()) {
            if (!input_dir.empty()) {
                std::vector<std::filesystem::path> files;
                for (const auto& e : std::filesystem::directory_iterator(input_dir))
                    if (e.path().extension() == ".json")
                        files.push_back(e.path());
                std::sort(files.begin(), files.end());
                Json out = Json::array();
                for (const auto& f : files) {
                    CurveInput in = load_input(f.string());
                    fill_overrides(in);
                    Json entry;
                    entry["file"] = f.filename().string();
                    entry["report"] = cusp::invariants_report(in);
                    out.push_back(entry);
                }
                print_json(out, pretty);
                return 0;
            }
            if (input.empty())
                cusp::fail("InputError", "invariants needs --input or --input-dir");
            CurveInput in = load_input(input);
            fill_overrides(in);
            Json rep = cusp::invariants_report(in);
            if (pretty)
                print_invariants_pretty(rep);
            else
                print_json(rep, false);
            return 0;
        }
        if (sem->parsed()) {
            Json rep = cusp::semimodule_report(sm_n, sm_m, sm_lambdas);
            if (pretty)
                print_table(rep);
            else
                print_json(rep, false);
            return 0;
        }
        if (sai->parsed()) {
            if (input.empty())
                cusp::fail("InputError", "saito needs --input");
            CurveInput in = load_input(input);
            fill_overrides(in);
            print_json(cusp::saito_report(in), pretty);
            return 0;
        }
        if (d1->parsed()) {
            if (input.empty())
                cusp::fail("InputError", "saito-pair-d1 needs --input");
            CurveInput in = load_input(input);
            fill_overrides(in);
            print_json(cusp::saito_pair_d1_report(in), pretty);
            return 0;
        }
        if (chk->parsed()) {
            if (input.empty())
                cusp::fail("InputError", "check needs --input");
            CurveInput in = load_input(input);
            fill_overrides(in);
            Json rep = cusp::check_report(in, seed);
            print_json(rep, pretty);
            return rep["all_pass"].get<bool>() ? 0 : 3;
        }
    } catch (const cusp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
