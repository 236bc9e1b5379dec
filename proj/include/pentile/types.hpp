#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pentile {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector5d = Eigen::Matrix<double, 5, 1>;

// Vertex labels A..E are indices 0..4. Edge i joins vertex i to vertex i+1
// (a = A->B, b = B->C, c = C->D, d = D->E, e = E->A).
inline constexpr int kNumLabels = 5;

inline char vertex_name(int v) { return static_cast<char>('A' + v); }
inline char edge_name(int e) { return static_cast<char>('a' + e); }

inline int parse_vertex_label(char c) {
    if (c >= 'A' && c <= 'E') return c - 'A';
    throw std::invalid_argument(std::string("bad vertex label: ") + c);
}

inline int parse_edge_label(char c) {
    if (c >= 'a' && c <= 'e') return c - 'a';
    throw std::invalid_argument(std::string("bad edge label: ") + c);
}

inline int mod5(int i) { return ((i % 5) + 5) % 5; }

// Edges incident to vertex v: prev ends at v, next starts at v.
inline int prev_edge(int v) { return mod5(v - 1); }
inline int next_edge(int v) { return v; }

// A relabeling of the pentagon: vertex v -> perm[v]. The ten symmetries of
// the label cycle (5 rotations x optional reflection). Edge i = (i, i+1)
// maps to the edge between perm[i] and perm[i+1].
struct Relabeling {
    std::array<int, 5> vertex_map;
    bool reflected = false;

    int map_vertex(int v) const { return vertex_map[v]; }
    int map_edge(int e) const {
        int u = vertex_map[e], v = vertex_map[mod5(e + 1)];
        // consecutive labels; the edge index is the smaller endpoint in cyclic order
        return (mod5(u + 1) == v) ? u : v;
    }
};

std::array<Relabeling, 10> all_relabelings();

struct Tolerances {
    double angle_tol_deg = 1e-6;  // absolute, degrees
    double len_tol_rel = 1e-9;    // relative to shape diameter

    double len_tol_abs(double diameter) const { return len_tol_rel * diameter; }
};

}  // namespace pentile
