// maharaja -- command-line front end

#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace maharaja;
using namespace maharaja::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Wythoff Nim, Maharaja Nim and (k,l)-Maharaja Nim: P-positions, bit-strings and dictionaries"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with defaults for the global options");

    Globals gl;
    app.add_option("--memory-budget", gl.memory_budget, "Largest grid size in bytes");
    app.add_option("--cache-dir", gl.cache_dir, "Directory for cached grids");
    app.add_option("--base-len", gl.base_len, "Telescope base prefix length in bits");
    app.add_option("--depth-margin", gl.depth_margin, "Extra telescope levels allowed");

    ComputeOptions co;
    auto* compute = app.add_subcommand("compute", "Compute a grid of P/N labels");
    compute->add_option("--game", co.game, "wythoff, maharaja, 23m or klm:k,l[;k,l...]")->required();
    compute->add_option("--bound", co.bound, "Board side")->required()->check(CLI::PositiveNumber);
    compute->add_option("--cache", co.cache, "Write the grid to this file");
    compute->add_option("--list", co.list, "Upper P-positions to print");

    PlotOptions po;
    auto* plot = app.add_subcommand("plot", "Draw P-positions, one file per game");
    plot->add_option("--games", po.games, "Game ids, or klm-panels for the six (k,l) games")
        ->required();
    plot->add_option("--bound", po.bound, "Board side")->check(CLI::PositiveNumber);
    plot->add_option("--format", po.format, "svg, pgm or csv");
    plot->add_option("--out-dir", po.out_dir, "Output directory");
    plot->add_flag("--overlay", po.overlay, "Draw y = phi x and y = x/phi");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Run the structural and dictionary checks of a game");
    verify->add_option("--game", vo.game, "wythoff, maharaja or 23m")->required();
    verify->add_option("--bound", vo.bound, "Grid side")->check(CLI::PositiveNumber);

    BitstringOptions bo;
    auto* bits = app.add_subcommand("bitstring", "Print the column bit-string");
    bits->add_option("--game", bo.game)->required();
    bits->add_option("--bound", bo.bound, "Oracle grid side")->check(CLI::PositiveNumber);
    bits->add_option("--generate", bo.generate, "Generate this many bits from the dictionary instead");
    bits->add_option("--out", bo.out, "Write a bitstring file");
    bits->add_option("--from", bo.from, "First column to print");
    bits->add_option("--count", bo.count, "Number of columns to print");

    DictLearnOptions lo;
    auto* learn = app.add_subcommand("dict-learn", "Learn a dictionary from an oracle grid");
    learn->add_option("--game", lo.game)->required();
    learn->add_option("--bound", lo.bound, "Grid side")->check(CLI::PositiveNumber);
    learn->add_option("--out", lo.out, "Write the dictionary file");
    learn->add_option("--trace", lo.trace, "Trace entries to print");

    DictRunOptions ro;
    auto* drun = app.add_subcommand("dict-run", "Generate a bit-string with a dictionary");
    drun->add_option("--dict", ro.dict, "Dictionary file, or maharaja / 23m")->required();
    drun->add_option("--seed", ro.seed, "Initial bits (built-in dictionaries default to the oracle seed)");
    drun->add_option("--head", ro.head, "Initial read position");
    drun->add_option("--target", ro.target, "Stop at this length");
    drun->add_option("--max-steps", ro.max_steps, "Stop after this many translations");
    drun->add_flag("--census", ro.census, "Count words by dictionary entry");
    drun->add_option("--census-limit", ro.census_limit, "Count only words starting below this column");
    drun->add_option("--out", ro.out, "Write the bits to a file");

    RewriteOptions wo;
    auto* rewrite = app.add_subcommand("rewrite", "Run a dictionary process with a step budget");
    rewrite->add_option("--dict", wo.dict, "Dictionary file, or maharaja / 23m")->required();
    rewrite->add_option("--start", wo.start, "Start string")->required();
    rewrite->add_option("--max-steps", wo.max_steps, "Step budget")->check(CLI::PositiveNumber);
    rewrite->add_option("--reader", wo.reader, "scan or head; default follows the dictionary policy");
    rewrite->add_flag("--trace", wo.trace, "Print every step");

    TriangleOptions to;
    auto* tri = app.add_subcommand("triangle", "Print the triangle of a multiplication table");
    tri->add_option("--table", to.table, "Table file, or example");
    tri->add_option("--rows", to.rows, "Rows to print")->check(CLI::PositiveNumber);
    tri->add_flag("--encode", to.encode, "Print the binary dictionary of the table");
    tri->add_flag("--verify", to.verify, "Run the encoded dictionary and compare rows");

    DecideOptions dO;
    auto* decide = app.add_subcommand("decide", "Decide a (2,3)-Maharaja Nim position");
    decide->add_option("--game", dO.game, "Only 23m");
    decide->add_option("--pos", dO.pos, "Position x,y")->required();
    decide->add_flag("--trace", dO.trace, "Print the telescope levels");

    PlayOptions pl;
    auto* play = app.add_subcommand("play", "Play against the engine");
    play->add_option("--game", pl.game);
    play->add_option("--start", pl.start, "Start position x,y");
    play->add_flag("--engine-first", pl.engine_first, "Let the engine move first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*compute)
            return cmd_compute(gl, co, std::cout);
        if (*plot)
            return cmd_plot(gl, po, std::cout);
        if (*verify)
            return cmd_verify(gl, vo, std::cout);
        if (*bits)
            return cmd_bitstring(gl, bo, std::cout);
        if (*learn)
            return cmd_dict_learn(gl, lo, std::cout);
        if (*drun)
            return cmd_dict_run(gl, ro, std::cout);
        if (*rewrite)
            return cmd_rewrite(gl, wo, std::cout);
        if (*tri)
            return cmd_triangle(gl, to, std::cout);
        if (*decide)
            return cmd_decide(gl, dO, std::cout);
        if (*play)
            return cmd_play(gl, pl, std::cin, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}
