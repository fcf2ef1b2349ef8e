// plot.hpp -- SVG, PGM and CSV renderings of P-positions

#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "golden.hpp"
#include "oracle.hpp"

namespace maharaja {

enum class PlotFormat { Svg, Pgm, Csv };

inline PlotFormat parse_plot_format(std::string_view s)
{
    if (s == "svg")
        return PlotFormat::Svg;
    if (s == "pgm")
        return PlotFormat::Pgm;
    if (s == "csv")
        return PlotFormat::Csv;
    throw std::invalid_argument("unknown plot format: " + std::string(s));
}

inline std::string_view extension(PlotFormat f) noexcept
{
    switch (f) {
    case PlotFormat::Svg: return "svg";
    case PlotFormat::Pgm: return "pgm";
    case PlotFormat::Csv: return "csv";
    }
    return "";
}

struct PlotSpec {
    u64 bound = 50;
    std::vector<std::string> games;
    bool overlay_lines = false;
    PlotFormat format = PlotFormat::Svg;

    void validate() const
    {
        if (bound == 0)
            throw std::invalid_argument("plot: bound must be at least 1");
        if (games.empty())
            throw std::invalid_argument("plot: no game given");
    }
};

/// The six jump sets of the (k,l) comparison panels.
inline std::vector<std::string> klm_panel_games()
{
    return {"klm:3,5", "klm:4,6", "klm:4,7", "klm:5,8", "klm:6,10", "klm:7,11"};
}

/// File-name stem for a ruleset id: "klm:3,5" -> "klm_3_5".
inline std::string file_stem(std::string id)
{
    for (char& c : id)
        if (c == ':' || c == ',' || c == ';')
            c = '_';
    return id;
}

namespace detail {

/// v / 10^6 with exactly six decimals, from an integer numerator.
inline std::string micro(u64 v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%llu.%06llu", static_cast<unsigned long long>(v / 1000000),
                  static_cast<unsigned long long>(v % 1000000));
    return buf;
}

} // namespace detail

/// One unit square per P-position, origin at the lower left. With overlay,
/// the lines y = phi x and y = x / phi run from the origin to the border.
inline void write_svg(std::ostream& os, const OutcomeGrid& g, bool overlay)
{
    const u64 N = g.bound();
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << N << ' ' << N << "\" width=\""
       << 8 * N << "\" height=\"" << 8 * N << "\">\n";
    os << "<title>" << g.ruleset().id() << " P-positions, bound " << N << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << N << "\" height=\"" << N << "\" fill=\"white\"/>\n";
    os << "<g fill=\"black\">\n";
    for (u64 y = 0; y < N; ++y)
        for (u64 x = 0; x < N; ++x)
            if (g.at(x, y) == Outcome::P)
                os << "<rect x=\"" << x << "\" y=\"" << N - 1 - y << "\" width=\"1\" height=\"1\"/>\n";
    os << "</g>\n";
    if (overlay) {
        // N/phi scaled by 10^6, exact.
        const u64 cut = floor_div_phi(N * 1000000);
        const std::string n = std::to_string(N) + ".000000";
        const std::string top = "0.000000";
        const std::string right_y = detail::micro(N * 1000000 - cut);
        os << "<g stroke=\"red\" stroke-width=\"0.15\" fill=\"none\">\n";
        os << "<line x1=\"0.000000\" y1=\"" << n << "\" x2=\"" << detail::micro(cut) << "\" y2=\"" << top
           << "\"/>\n";
        os << "<line x1=\"0.000000\" y1=\"" << n << "\" x2=\"" << n << "\" y2=\"" << right_y << "\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
}

/// Plain greyscale map, P black and N white, top row is y = bound - 1.
inline void write_pgm(std::ostream& os, const OutcomeGrid& g)
{
    const u64 N = g.bound();
    os << "P2\n# " << g.ruleset().id() << "\n" << N << ' ' << N << "\n255\n";
    for (u64 r = 0; r < N; ++r) {
        const u64 y = N - 1 - r;
        for (u64 x = 0; x < N; ++x) {
            if (x)
                os << ' ';
            os << (g.at(x, y) == Outcome::P ? 0 : 255);
        }
        os << '\n';
    }
}

inline void write_csv_header(std::ostream& os) { os << "x,y,game\n"; }

/// Rows "x,y,game" for every P-position, ordered by y then x.
inline void write_csv_rows(std::ostream& os, const OutcomeGrid& g)
{
    const std::string id = g.ruleset().id();
    for (u64 y = 0; y < g.bound(); ++y)
        for (u64 x = 0; x < g.bound(); ++x)
            if (g.at(x, y) == Outcome::P)
                os << x << ',' << y << ",\"" << id << "\"\n";
}

inline void write_plot(std::ostream& os, const OutcomeGrid& g, const PlotSpec& spec)
{
    switch (spec.format) {
    case PlotFormat::Svg: write_svg(os, g, spec.overlay_lines); break;
    case PlotFormat::Pgm: write_pgm(os, g); break;
    case PlotFormat::Csv:
        write_csv_header(os);
        write_csv_rows(os, g);
        break;
    }
}

} // namespace maharaja
