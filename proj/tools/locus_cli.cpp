#include "locus/job.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using locus::job::json;

namespace {

json read_json(const fs::path& p)
{
    std::ifstream in(p);
    if (!in) throw locus::ParameterError("cannot read " + p.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw locus::ParameterError(p.string() + ": " + e.what());
    }
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream out(p);
    if (!out) throw locus::ParameterError("cannot write " + p.string());
    out << text;
}

int run_construct(const std::string& config, const std::string& out_dir)
{
    auto c = locus::job::construct(read_json(config));
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "descriptor.json", c.descriptor.dump(2) + "\n");
    write_text(fs::path(out_dir) / "precert.json", c.precert.dump(2) + "\n");
    std::cout << c.precert.dump(2) << "\n";
    return 0;
}

int run_certify(const std::string& in_dir, std::optional<std::uint64_t> max_enum)
{
    json d = read_json(fs::path(in_dir) / "descriptor.json");
    auto budget = locus::job::resolve_budget(d, max_enum);
    auto c = locus::job::certify(d, budget);
    write_text(fs::path(in_dir) / "certificate.json", c.certificate.dump(2) + "\n");
    write_text(fs::path(in_dir) / "oracle.csv", locus::job::oracle_csv(c.oracles));
    std::cout << c.certificate.at("name").get<std::string>() << ": " << c.verdict << "\n";
    for (const auto& ch : c.certificate.at("checks")) {
        std::cout << "  " << ch.at("status").get<std::string>() << "  " << ch.at("name").get<std::string>();
        if (ch.contains("note")) std::cout << "  (" << ch.at("note").get<std::string>() << ")";
        std::cout << "\n";
    }
    for (const auto& r : c.oracles)
        std::cout << "  oracle " << r.quantity << ": " << r.outcome << (r.verified ? " = " + std::to_string(*r.verified) : "") << "\n";
    std::cout << "status: " << c.certificate.at("status").get<std::string>() << "\n";
    return c.refuted ? 2 : 0;
}

int run_simulate(const std::string& in_dir, const std::string& pattern, std::uint64_t seed, std::uint64_t trials)
{
    json d = read_json(fs::path(in_dir) / "descriptor.json");
    auto rows = locus::job::simulate(d, pattern, seed, trials, locus::job::resolve_budget(d, std::nullopt));
    std::cout << locus::simulation_csv(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"construct and certify locally recoverable codes"};
    app.require_subcommand(1);

    std::string config, out_dir, in_dir, pattern;
    std::uint64_t max_enum = 0, seed = 0, trials = 0;

    auto* construct = app.add_subcommand("construct", "build a code descriptor from a config");
    construct->add_option("--config", config, "config JSON")->required();
    construct->add_option("--out", out_dir, "output directory")->required();

    auto* certify = app.add_subcommand("certify", "run invariant suites and oracles on a descriptor");
    certify->add_option("--in", in_dir, "descriptor directory")->required();
    auto* max_opt = certify->add_option("--max-enum", max_enum, "enumeration budget")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "seeded erasure-repair simulation, CSV to stdout");
    simulate->add_option("--in", in_dir, "descriptor directory")->required();
    simulate->add_option("--pattern", pattern, "random:K | bernoulli:P | local:E | pattern JSON file")->required();
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--trials", trials, "number of trials")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return run_construct(config, out_dir);
        if (certify->parsed()) return run_certify(in_dir, max_opt->count() ? std::optional<std::uint64_t>(max_enum) : std::nullopt);
        if (simulate->parsed()) return run_simulate(in_dir, pattern, seed, trials);
    } catch (const locus::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
