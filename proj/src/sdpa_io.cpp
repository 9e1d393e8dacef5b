#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "liftrank/sdp.hpp"

namespace liftrank {

void write_sdpa(std::ostream& os, const SdpProblem& p) {
    os << p.constraints.size() << "\n";
    os << p.blocks.size() << "\n";
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (b) os << ' ';
        os << (p.blocks[b].kind == BlockKind::Diag ? -p.blocks[b].dim : p.blocks[b].dim);
    }
    os << "\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < p.constraints.size(); ++j) {
        if (j) os << ' ';
        os << p.constraints[j].rhs;
    }
    os << "\n";
    auto emit = [&](int cons, const MatEntry& e) {
        os << cons << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value
           << "\n";
    };
    for (const auto& e : p.objective) emit(0, e);
    for (std::size_t j = 0; j < p.constraints.size(); ++j)
        for (const auto& e : p.constraints[j].entries) emit(static_cast<int>(j) + 1, e);
}

SdpProblem read_sdpa(std::istream& is) {
    auto next_data_line = [&](std::string& line) {
        while (std::getline(is, line)) {
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '"' || line[pos] == '*') continue;  // comment lines
            return true;
        }
        return false;
    };
    std::string line;
    SdpProblem p;
    p.maximize = true;

    if (!next_data_line(line)) throw std::invalid_argument("sdpa: missing constraint count");
    int m = std::stoi(line);
    if (m < 0) throw std::invalid_argument("sdpa: negative constraint count");

    if (!next_data_line(line)) throw std::invalid_argument("sdpa: missing block count");
    int nblocks = std::stoi(line);
    if (nblocks <= 0) throw std::invalid_argument("sdpa: bad block count");

    if (!next_data_line(line)) throw std::invalid_argument("sdpa: missing block sizes");
    {
        std::istringstream ss(line);
        for (int b = 0; b < nblocks; ++b) {
            int d;
            char c;
            // tolerate separators like commas or braces from the wild
            while (ss >> std::ws && !std::isdigit(ss.peek()) && ss.peek() != '-' && ss.get(c)) {}
            if (!(ss >> d)) throw std::invalid_argument("sdpa: bad block size list");
            p.blocks.push_back(d < 0 ? BlockSpec{BlockKind::Diag, -d} : BlockSpec{BlockKind::Psd, d});
        }
    }

    p.constraints.resize(m);
    if (!next_data_line(line)) throw std::invalid_argument("sdpa: missing rhs line");
    {
        std::istringstream ss(line);
        for (int j = 0; j < m; ++j) {
            char c;
            while (ss >> std::ws && !std::isdigit(ss.peek()) && ss.peek() != '-' &&
                   ss.peek() != '+' && ss.peek() != '.' && ss.get(c)) {}
            if (!(ss >> p.constraints[j].rhs)) throw std::invalid_argument("sdpa: bad rhs line");
        }
    }

    while (next_data_line(line)) {
        std::istringstream ss(line);
        int cons, block, i, j;
        double v;
        if (!(ss >> cons >> block >> i >> j >> v)) throw std::invalid_argument("sdpa: bad entry line");
        if (cons < 0 || cons > m) throw std::invalid_argument("sdpa: entry constraint out of range");
        if (block < 1 || block > nblocks) throw std::invalid_argument("sdpa: entry block out of range");
        MatEntry e{block - 1, i - 1, j - 1, v};
        if (e.row > e.col) std::swap(e.row, e.col);
        if (cons == 0)
            p.objective.push_back(e);
        else
            p.constraints[cons - 1].entries.push_back(e);
    }
    return p;
}

}  // namespace liftrank
