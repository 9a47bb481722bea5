#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rigidity/commands.hpp"

namespace {

struct OutputFlags {
    bool text = false;
    bool timing = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& out)
{
    cmd->add_flag("--text,!--json", out.text, "Human-readable output instead of JSON (default --json)");
    cmd->add_flag("--timing", out.timing, "Include elapsed wall time in the output");
}

int emit(const rigidity::CommandResult& r, const OutputFlags& out)
{
    if (out.text)
        std::cout << rigidity::to_text(r, out.timing);
    else
        std::cout << r.to_json(out.timing).dump(2) << '\n';
    if (r.status != rigidity::Status::ok) std::cerr << "rigidity " << r.command << ": " << r.message << '\n';
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ring multiplications compatible with a fixed abelian addition"};
    app.require_subcommand(1);
    OutputFlags out;

    rigidity::EnumerateOptions enumerate;
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate every ring multiplication on a finite abelian group");
    enum_cmd->add_option("--group", enumerate.group, "Cyclic factor moduli, e.g. 4 or 2,2,3")->required();
    enum_cmd->add_option("--workers", enumerate.search.workers, "Worker threads")->capture_default_str();
    enum_cmd->add_option("--budget", enumerate.search.budget, "Candidate table budget")
        ->envname("RIGIDITY_BUDGET")
        ->capture_default_str();
    add_output_flags(enum_cmd, out);

    rigidity::VerifyScaledOptions verify;
    auto* verify_cmd = app.add_subcommand("verify-scaled", "Check the scaled multiplication n*m = a.n.m on a window of Z");
    verify_cmd->add_option("--a", verify.a, "Scale factor")->required();
    verify_cmd->add_option("--bound", verify.bound, "Window bound B; the window is [-B, B]")->capture_default_str();
    verify_cmd->add_option("--samples", verify.samples, "Random triples for the identity suite")->capture_default_str();
    add_output_flags(verify_cmd, out);

    rigidity::ClassifyOptions classify;
    auto* classify_cmd = app.add_subcommand("classify", "Classify every ring multiplication on Z/N by its scale");
    classify_cmd->add_option("--modulus", classify.modulus, "N")->required();
    classify_cmd->add_option("--workers", classify.search.workers, "Worker threads")->capture_default_str();
    classify_cmd->add_option("--budget", classify.search.budget, "Candidate table budget")
        ->envname("RIGIDITY_BUDGET")
        ->capture_default_str();
    add_output_flags(classify_cmd, out);

    rigidity::MatrixDemoOptions matrix;
    auto* matrix_cmd = app.add_subcommand("matrix-demo", "Standard vs term-by-term products on n x n matrices over Z/m");
    matrix_cmd->add_option("--n", matrix.n, "Dimension")->capture_default_str();
    matrix_cmd->add_option("--mod", matrix.modulus, "Entry modulus m")->capture_default_str();
    matrix_cmd->add_option("--samples", matrix.samples, "Random triples per axiom check")->capture_default_str();
    add_output_flags(matrix_cmd, out);

    rigidity::ScaledUnitalityOptions unitality;
    auto* unitality_cmd = app.add_subcommand("lemma23", "Unitality of the scaled rings over Z/N");
    unitality_cmd->add_option("--modulus", unitality.modulus, "N")->required();
    add_output_flags(unitality_cmd, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (enum_cmd->parsed()) return emit(rigidity::cmd_enumerate(enumerate), out);
    if (verify_cmd->parsed()) return emit(rigidity::cmd_verify_scaled(verify), out);
    if (classify_cmd->parsed()) return emit(rigidity::cmd_classify(classify), out);
    if (matrix_cmd->parsed()) return emit(rigidity::cmd_matrix_demo(matrix), out);
    if (unitality_cmd->parsed()) return emit(rigidity::cmd_scaled_unitality(unitality), out);
    return 2;
}
