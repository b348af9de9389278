#include "pbp/grid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace pbp {

Rect intersect(const Rect& a, const Rect& b) {
    if (a.empty() || b.empty()) return Rect{};
    int x0 = std::max(a.x0, b.x0);
    int y0 = std::max(a.y0, b.y0);
    int x1 = std::min(a.x1(), b.x1());
    int y1 = std::min(a.y1(), b.y1());
    if (x1 < x0 || y1 < y0) return Rect{};
    return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

Grid::Grid(int width, int height) : w_(width), h_(height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("Grid: width and height must be >= 1");
    uint64_t words = (uint64_t(width) * uint64_t(height) + 63) / 64;
    occ_.assign(words, 0);
    clo_.assign(words, 0);
}

CellState Grid::at(int x, int y) const {
    if (!in_bounds(x, y)) throw std::out_of_range("Grid::at: coordinate out of bounds");
    uint64_t i = index(x, y);
    if (test(occ_, i)) return CellState::Occupied;
    if (test(clo_, i)) return CellState::Closed;
    return CellState::Open;
}

void Grid::set(int x, int y, CellState s) {
    if (!in_bounds(x, y)) throw std::out_of_range("Grid::set: coordinate out of bounds");
    uint64_t i = index(x, y);
    switch (s) {
        case CellState::Open:
            clear_bit(occ_, i);
            clear_bit(clo_, i);
            break;
        case CellState::Occupied:
            set_bit(occ_, i);
            clear_bit(clo_, i);
            break;
        case CellState::Closed:
            clear_bit(occ_, i);
            set_bit(clo_, i);
            break;
    }
}

void Grid::fill(const Rect& r, CellState s) {
    if (r.empty()) return;
    if (!in_bounds(r.x0, r.y0) || !in_bounds(r.x1(), r.y1()))
        throw std::out_of_range("Grid::fill: rect out of bounds");
    for (int y = r.y0; y <= r.y1(); ++y)
        for (int x = r.x0; x <= r.x1(); ++x) set(x, y, s);
}

int64_t Grid::popcount(const std::vector<uint64_t>& plane) {
    int64_t n = 0;
    for (uint64_t w : plane) n += std::popcount(w);
    return n;
}

std::string Grid::to_text() const {
    std::string out;
    out.reserve(size_t(w_ + 1) * size_t(h_));
    for (int y = h_ - 1; y >= 0; --y) {
        for (int x = 0; x < w_; ++x) {
            char c = '.';
            if (occupied(x, y)) c = '#';
            else if (closed(x, y)) c = 'x';
            out.push_back(c);
        }
        out.push_back('\n');
    }
    return out;
}

Grid Grid::from_text(std::string_view text) {
    std::vector<std::string_view> rows;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            rows.push_back(text.substr(pos));
            break;
        }
        rows.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw std::invalid_argument("Grid::from_text: empty input");
    size_t w = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != w || w == 0)
            throw std::invalid_argument("Grid::from_text: ragged or empty rows");

    Grid g(int(w), int(rows.size()));
    for (size_t row = 0; row < rows.size(); ++row) {
        int y = int(rows.size()) - 1 - int(row);
        for (size_t x = 0; x < w; ++x) {
            switch (rows[row][x]) {
                case '.': break;
                case '#': g.set(int(x), y, CellState::Occupied); break;
                case 'x': g.set(int(x), y, CellState::Closed); break;
                default:
                    throw std::invalid_argument("Grid::from_text: bad cell character");
            }
        }
    }
    return g;
}

namespace {

struct DisjointSet {
    std::vector<int32_t> parent;
    explicit DisjointSet(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int32_t find(int32_t a) {
        int32_t root = a;
        while (parent[root] != root) root = parent[root];
        while (parent[a] != root) {
            int32_t next = parent[a];
            parent[a] = root;
            a = next;
        }
        return root;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ClusterSummary occupied_clusters(const Grid& g) {
    const int w = g.width(), h = g.height();
    DisjointSet ds(size_t(w) * size_t(h));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!g.occupied(x, y)) continue;
            int32_t i = y * w + x;
            if (x > 0 && g.occupied(x - 1, y)) ds.unite(i, i - 1);
            if (y > 0 && g.occupied(x, y - 1)) ds.unite(i, i - w);
        }
    }

    ClusterSummary summary;
    std::vector<int32_t> cluster_of(size_t(w) * size_t(h), -1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!g.occupied(x, y)) continue;
            int32_t root = ds.find(y * w + x);
            int32_t id = cluster_of[root];
            if (id < 0) {
                id = int32_t(summary.clusters.size());
                cluster_of[root] = id;
                summary.clusters.push_back({0, Rect{x, y, 1, 1}});
            }
            ClusterInfo& c = summary.clusters[size_t(id)];
            c.size += 1;
            int nx0 = std::min(c.bbox.x0, x), ny0 = std::min(c.bbox.y0, y);
            int nx1 = std::max(c.bbox.x1(), x), ny1 = std::max(c.bbox.y1(), y);
            c.bbox = Rect{nx0, ny0, nx1 - nx0 + 1, ny1 - ny0 + 1};
        }
    }
    summary.cluster_count = int64_t(summary.clusters.size());
    for (const ClusterInfo& c : summary.clusters)
        summary.max_linf_diameter =
            std::max(summary.max_linf_diameter, std::max(c.bbox.w, c.bbox.h) - 1);
    return summary;
}

}  // namespace pbp
