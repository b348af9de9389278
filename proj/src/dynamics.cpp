#include "pbp/dynamics.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace pbp {

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::Standard: return "standard";
        case Rule::Modified: return "modified";
        case Rule::ModifiedPlusVertical: return "modified+vertical";
    }
    return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
    if (name == "standard") return Rule::Standard;
    if (name == "modified") return Rule::Modified;
    if (name == "modified+vertical" || name == "mpv") return Rule::ModifiedPlusVertical;
    return std::nullopt;
}

bool rule_fires(const Grid& g, int x, int y, Rule r) {
    bool e = g.occupied_or_false(x + 1, y);
    bool w = g.occupied_or_false(x - 1, y);
    bool n = g.occupied_or_false(x, y + 1);
    bool s = g.occupied_or_false(x, y - 1);
    switch (r) {
        case Rule::Standard: return int(e) + int(w) + int(n) + int(s) >= 2;
        case Rule::Modified: return (e || w) && (n || s);
        case Rule::ModifiedPlusVertical: return ((e || w) && (n || s)) || (n && s);
    }
    return false;
}

Grid step(const Grid& g, Rule r) {
    Grid next = g;
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            if (g.open(x, y) && rule_fires(g, x, y, r))
                next.set(x, y, CellState::Occupied);
    return next;
}

// Frontier engine with raw bit-plane access. Cells are identified by the
// flat index i = y*width + x used by the Grid planes.
class FrontierEngine {
public:
    static FinalGrid run(const Grid& g, Rule r) {
        FinalGrid out{g, 0};
        Grid& cur = out.grid;
        const int w = cur.w_, h = cur.h_;
        const uint64_t n = uint64_t(w) * uint64_t(h);
        const uint64_t* occ = cur.occ_.data();
        const uint64_t* clo = cur.clo_.data();

        std::vector<uint32_t> frontier, firing;
        frontier.reserve(1024);
        firing.reserve(1024);
        for (uint64_t word = 0; word < cur.occ_.size(); ++word) {
            uint64_t bits = cur.occ_[word];
            while (bits) {
                uint64_t i = (word << 6) + uint64_t(std::countr_zero(bits));
                bits &= bits - 1;
                if (i < n) frontier.push_back(uint32_t(i));
            }
        }

        auto occ_bit = [&](uint64_t i) -> bool { return (occ[i >> 6] >> (i & 63)) & 1u; };
        auto clo_bit = [&](uint64_t i) -> bool { return (clo[i >> 6] >> (i & 63)) & 1u; };

        // Predicate on the round-start configuration; (x, y) derived from i.
        auto fires = [&](uint32_t i, int x, int y) -> bool {
            bool e = x + 1 < w && occ_bit(i + 1);
            bool we = x > 0 && occ_bit(i - 1);
            bool no = y + 1 < h && occ_bit(i + uint64_t(w));
            bool so = y > 0 && occ_bit(i - uint64_t(w));
            switch (r) {
                case Rule::Standard: return int(e) + int(we) + int(no) + int(so) >= 2;
                case Rule::Modified: return (e || we) && (no || so);
                case Rule::ModifiedPlusVertical:
                    return ((e || we) && (no || so)) || (no && so);
            }
            return false;
        };
        auto consider = [&](uint32_t i, int x, int y) {
            if (!occ_bit(i) && !clo_bit(i) && fires(i, x, y)) firing.push_back(i);
        };

        while (!frontier.empty()) {
            firing.clear();
            for (uint32_t i : frontier) {
                int x = int(i % uint32_t(w));
                int y = int(i / uint32_t(w));
                if (x + 1 < w) consider(i + 1, x + 1, y);
                if (x > 0) consider(i - 1, x - 1, y);
                if (y + 1 < h) consider(i + uint32_t(w), x, y + 1);
                if (y > 0) consider(i - uint32_t(w), x, y - 1);
            }
            frontier.clear();
            for (uint32_t i : firing) {
                if (!occ_bit(i)) {
                    cur.occ_[i >> 6] |= uint64_t(1) << (i & 63);
                    frontier.push_back(i);
                }
            }
            if (!frontier.empty()) ++out.steps_to_fixpoint;
        }
        return out;
    }
};

FinalGrid closure(const Grid& g, Rule r) { return FrontierEngine::run(g, r); }

FinalGrid closure_naive(const Grid& g, Rule r) {
    FinalGrid out{g, 0};
    for (;;) {
        Grid next = step(out.grid, r);
        if (next == out.grid) break;
        out.grid = next;
        ++out.steps_to_fixpoint;
    }
    return out;
}

bool eventually_occupied(const Grid& g, Rule r, Coord x) {
    if (!g.in_bounds(x)) throw std::out_of_range("eventually_occupied: out of bounds");
    return closure(g, r).grid.occupied(x.x, x.y);
}

bool is_eliminable(const Grid& g, Rule r, Coord x) {
    if (!g.in_bounds(x) || !g.in_bounds(x.x - 1, x.y) || !g.in_bounds(x.x + 1, x.y) ||
        !g.in_bounds(x.x, x.y - 1) || !g.in_bounds(x.x, x.y + 1))
        throw std::invalid_argument("is_eliminable: cell or neighbor out of bounds");
    if (g.at(x) != CellState::Closed)
        throw std::invalid_argument("is_eliminable: cell is not closed");
    const Grid fin = closure(g, r).grid;
    return fin.occupied(x.x - 1, x.y) && fin.occupied(x.x + 1, x.y) &&
           fin.occupied(x.x, x.y - 1) && fin.occupied(x.x, x.y + 1);
}

Grid eliminate(const Grid& g, Rule r, Coord x) {
    if (!is_eliminable(g, r, x))
        throw std::logic_error("eliminate: cell is not eliminable");
    Grid out = g;
    out.set(x, CellState::Occupied);
    return out;
}

}  // namespace pbp
