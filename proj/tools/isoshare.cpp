// isoshare: deal, recover and audit isogeny-path shares.

#include <iostream>

#include <CLI11.hpp>

#include "isoshare/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Threshold sharing of a secret isogeny path"};
    app.require_subcommand(1);

    isoshare::DealOptions deal;
    std::string seed_hex;
    auto* deal_cmd = app.add_subcommand("deal", "Deal shares from a config file");
    deal_cmd->add_option("-c,--config", deal.config, "Config file")->required();
    deal_cmd->add_option("-o,--out", deal.out_dir, "Output directory")->required();
    deal_cmd->add_option("--seed", seed_hex, "Secret seed (hex)");
    deal_cmd->add_flag("--force", deal.force, "Deal despite parameter violations");
    deal_cmd->add_flag("--show-secret", deal.show_secret, "Print the dealt chain");

    std::filesystem::path public_file;
    std::vector<std::filesystem::path> share_files;
    auto* recover_cmd = app.add_subcommand("recover", "Recover the isogeny from share files");
    recover_cmd->add_option("-p,--public", public_file, "public.isoshare")->required();
    recover_cmd->add_option("shares", share_files, "Share files")->required();

    std::filesystem::path check_config;
    auto* check_cmd = app.add_subcommand("check", "Audit a parameter set");
    check_cmd->add_option("-c,--config", check_config, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : isoshare::exit_invalid;
    }

    try {
        if (*deal_cmd) {
            if (!seed_hex.empty()) {
                try {
                    deal.seed = isoshare::detail::parse_number<std::uint64_t>("--seed", seed_hex, 16);
                } catch (const isoshare::Error& e) {
                    std::cerr << "error: " << e.what() << '\n';
                    return isoshare::exit_invalid;
                }
            }
            return isoshare::run_deal(deal, std::cout, std::cerr);
        }
        if (*recover_cmd) return isoshare::run_recover(public_file, share_files, std::cout, std::cerr);
        return isoshare::run_check(check_config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return isoshare::exit_internal;
    }
}
