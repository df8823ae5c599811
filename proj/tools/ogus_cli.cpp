#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ogus/cli.hpp"
#include "ogus/errors.hpp"

namespace {

ogus::cli::Input read_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ogus::Error(ogus::ErrorKind::ConfigParse, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return {path, os.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"FOg realizations of Kummer 1-motives"};
    app.require_subcommand(1);

    std::string places = "auto:50";
    int prec = 40;
    std::string bound = "1000000";
    long field_d = 1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--places", places, "auto:<bound> or list:p1,p2,...")->capture_default_str();
        sub->add_option("--prec", prec, "p-adic working precision")->capture_default_str()->check(CLI::Range(4, 100000));
        sub->add_option("--bound", bound, "height bound for reconstruction")->capture_default_str();
        sub->add_option("--field-d", field_d, "K = Q(sqrt d)")->capture_default_str();
    };

    std::string config, left, right, matrix, charpoly;
    long p = 0;
    int n = 1, twist = 0;

    auto* realize = app.add_subcommand("realize", "T_Og of a motive");
    realize->add_option("config", config)->required();
    add_common(realize);

    auto* hom = app.add_subcommand("hom", "hom space experiment between two motives");
    hom->add_option("left", left)->required();
    hom->add_option("right", right)->required();
    add_common(hom);

    auto* dec = app.add_subcommand("decompose", "weight decomposition of a linear operator");
    dec->add_option("matrix", matrix)->required();
    dec->add_option("--p", p)->required();
    dec->add_option("--n", n)->capture_default_str();
    dec->add_option("--charpoly", charpoly, "coefficients, leading first, comma-separated")->required();
    dec->add_option("--prec", prec)->capture_default_str()->check(CLI::Range(4, 100000));

    auto* check = app.add_subcommand("check", "effectivity and level predicates");
    check->add_option("config", config)->required();
    check->add_option("--twist", twist, "check X(k) instead of X")->capture_default_str();
    add_common(check);

    CLI11_PARSE(app, argc, argv);

    ogus::cli::Report report;
    try {
        ogus::cli::Options options;
        options.precision = prec;
        options.field_d = field_d;
        if (options.bound.set_str(bound, 10) != 0 || options.bound <= 0)
            throw ogus::Error(ogus::ErrorKind::ConfigParse, "--bound must be a positive integer");
        if (!dec->parsed())
            options.places = ogus::cli::parse_place_policy(places);
        if (realize->parsed())
            report = ogus::cli::run_realize(read_input(config), options);
        else if (hom->parsed())
            report = ogus::cli::run_hom(read_input(left), read_input(right), options);
        else if (dec->parsed())
            report = ogus::cli::run_decompose(read_input(matrix), p, n, charpoly, prec);
        else
            report = ogus::cli::run_check(read_input(config), options, twist);
    } catch (const ogus::Error& e) {
        std::cout << "error: " << e.what() << "\nstatus: ERROR(" << ogus::to_string(e.kind()) << ")\n";
        return 1;
    }
    std::cout << report.text;
    return report.exit_code();
}
