/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#include "sdapsim/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int
main(int argc, char** argv)
{
    namespace cli = sdap::cli;

    CLI::App app{"SDAP user-plane simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string outDir = "results";
    std::optional<std::uint64_t> seed;
    bool noSdap = false;
    std::string codecInput;

    auto* run = app.add_subcommand("run", "Run a scenario and write log, CSV and summary");
    run->add_option("--scenario", scenario, "Scenario .ini file")->required();
    run->add_option("--out", outDir, "Output directory");
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_flag("--no-sdap", noSdap, "Bypass SDAP (single shared FIFO)");

    auto* validate = app.add_subcommand("validate", "Run the functional checklist on a scenario");
    validate->add_option("--scenario", scenario, "Scenario .ini file")->required();
    validate->add_option("--seed", seed, "Override the scenario seed");
    validate->add_flag("--no-sdap", noSdap, "Bypass SDAP (single shared FIFO)");

    auto* codec = app.add_subcommand("codec", "Decode a hex SDAP byte or encode dc,rqi,qfi");
    codec->add_option("input", codecInput, "e.g. 0x85 or Data,false,5")->required();

    app.add_subcommand("version", "Print the version");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return cli::kExitUsage;
    }

    const cli::Overrides overrides{seed, noSdap};
    if (*run)
    {
        return cli::CmdRun(scenario, outDir, overrides, std::cout, std::cerr);
    }
    if (*validate)
    {
        return cli::CmdValidate(scenario, overrides, std::cout, std::cerr);
    }
    if (*codec)
    {
        return cli::CmdCodec(codecInput, std::cout, std::cerr);
    }
    std::cout << cli::kVersion << '\n';
    return cli::kExitOk;
}
