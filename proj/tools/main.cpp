// chaosmoments: moment growth, small-ball, and diagram toolkit for a family
// of stochastic PDE Green's functions. One binary, module-per-subcommand.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 usage error, 3 numerical-convergence error. Errors print a single
// "ERROR <code>: <message>" line on stderr.

#include "cli_common.hpp"

namespace {

int exit_code_for(chaosmoments::ErrorCode c) {
    switch (c) {
        case chaosmoments::ErrorCode::QuadratureNonConvergence:
        case chaosmoments::ErrorCode::UnstableDiscretization:
            return 3;
        default:
            return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment, small-ball, and diagram computations for stochastic PDE kernels"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    cli::Action action;
    cli::register_exponents(app, action);
    cli::register_diagrams(app, action);
    cli::register_kernels(app, action);
    cli::register_smallball(app, action);
    cli::register_hls(app, action);
    cli::register_moments(app, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR BadUsage: " << e.what() << "\n";
        return 2;
    }

    if (!action) {
        std::cerr << "ERROR BadUsage: no subcommand selected\n";
        return 2;
    }

    try {
        return action();
    } catch (const chaosmoments::Error& e) {
        std::cerr << "ERROR " << chaosmoments::error_code_name(e.code()) << ": "
                  << e.message() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal: " << e.what() << "\n";
        return 3;
    }
}
