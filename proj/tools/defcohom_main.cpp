#include "defcohom/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw defcohom::Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"defcohom: deformation complexes and cohomology of linear Lie brackets"};
    app.require_subcommand(1);

    std::string job_path, out_path, format = "table";
    CLI::App* run = app.add_subcommand("run", "run a job file and report results");
    run->add_option("job", job_path, "job file (JSON)")->required();
    run->add_option("--out", out_path, "write the JSON report to this file");
    run->add_option("--format", format, "stdout format: table|json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string check_path;
    CLI::App* check = app.add_subcommand("check", "parse and validate a job file only");
    check->add_option("job", check_path, "job file (JSON)")->required();

    CLI::App* examples = app.add_subcommand("examples", "list the built-in example jobs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (examples->parsed()) {
            std::cout << defcohom::examples_catalog().dump(2) << "\n";
            return 0;
        }
        if (check->parsed()) {
            defcohom::parse_job(slurp(check_path));
            std::cout << "OK\n";
            return 0;
        }
        std::string raw = slurp(job_path);
        defcohom::JobSpec spec = defcohom::parse_job(raw);
        nlohmann::json report = defcohom::run_job(spec, raw);
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            out << report.dump(2) << "\n";
        }
        if (format == "json")
            std::cout << report.dump(2) << "\n";
        else
            std::cout << defcohom::report_to_table(report);
        return defcohom::report_exit_code(report);
    } catch (const defcohom::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
