#include "rdsm/xyz.hpp"

#include "rdsm/elements.hpp"
#include "rdsm/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rdsm {
namespace {

// Line-oriented reader keeping a 1-based line counter for error reports.
struct LineReader {
    const std::string& text;
    std::size_t pos = 0;
    long line_no = 0;

    bool next(std::string& out) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        out.assign(text, pos, end - pos);
        if (!out.empty() && out.back() == '\r') out.pop_back();
        pos = end + 1;
        ++line_no;
        return true;
    }

    bool next_nonblank(std::string& out) {
        while (next(out)) {
            for (char c : out)
                if (!std::isspace(static_cast<unsigned char>(c))) return true;
        }
        return false;
    }
};

bool parse_double(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

std::vector<Molecule> parse_xyz(const std::string& text) {
    std::vector<Molecule> mols;
    LineReader reader{text};
    std::string line;

    while (reader.next_nonblank(line)) {
        long count_line = reader.line_no;
        int natoms = 0;
        {
            std::istringstream iss(line);
            std::string tok, extra;
            if (!(iss >> tok) || (iss >> extra))
                throw ParseError("malformed atom-count line '" + line + "'", count_line);
            try {
                std::size_t used = 0;
                natoms = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("malformed atom count '" + tok + "'", count_line);
            }
        }
        if (natoms < 2)
            throw ParseError("frame must have at least 2 atoms, got " + std::to_string(natoms),
                             count_line);

        std::string comment;
        if (!reader.next(comment))
            throw ParseError("missing comment line after atom count", count_line);

        std::vector<int> zs;
        zs.reserve(static_cast<std::size_t>(natoms));
        Eigen::Matrix<double, Eigen::Dynamic, 3> pos(natoms, 3);
        for (int i = 0; i < natoms; ++i) {
            if (!reader.next(line))
                throw ParseError("unexpected end of document: expected " +
                                     std::to_string(natoms) + " atoms, got " + std::to_string(i),
                                 reader.line_no);
            std::istringstream iss(line);
            std::string symbol, xs, ys, zs_tok;
            if (!(iss >> symbol >> xs >> ys >> zs_tok))
                throw ParseError("malformed atom line '" + line + "'", reader.line_no);
            int z = atomic_number_of(symbol);
            if (z == 0)
                throw ParseError("unknown element symbol '" + symbol + "'", reader.line_no);
            double x, y, zc;
            if (!parse_double(xs, x) || !parse_double(ys, y) || !parse_double(zs_tok, zc))
                throw ParseError("coordinate parse failure in '" + line + "'", reader.line_no);
            zs.push_back(z);
            pos(i, 0) = x;
            pos(i, 1) = y;
            pos(i, 2) = zc;
        }
        mols.emplace_back(std::move(zs), std::move(pos), comment);
    }
    return mols;
}

std::string write_xyz(const std::vector<Molecule>& mols) {
    std::string out;
    char buf[128];
    for (const Molecule& m : mols) {
        out += std::to_string(m.size());
        out += '\n';
        out += m.tag();
        out += '\n';
        for (int i = 0; i < m.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%-2s % .10f % .10f % .10f\n",
                          element_symbol(m.atomic_numbers()[static_cast<std::size_t>(i)]).c_str(),
                          m.positions()(i, 0), m.positions()(i, 1), m.positions()(i, 2));
            out += buf;
        }
    }
    return out;
}

std::vector<Molecule> read_xyz_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_xyz(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
}

void write_xyz_file(const std::string& path, const std::vector<Molecule>& mols) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << write_xyz(mols);
}

} // namespace rdsm
