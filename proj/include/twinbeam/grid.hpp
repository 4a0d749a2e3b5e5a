#pragma once

#include <Eigen/Dense>

#include "twinbeam/specs.hpp"

namespace twinbeam {

// Uniform (q_x, Omega) grid for the signal region; the idler lives on the mirrored points (-q_x, Omega).
// q_x sits on the half-integer lattice (k + 1/2) h_q, so signal and mirrored idler share one lattice.
struct Grid2D {
    Eigen::VectorXd q;      // rad/um, increasing, all positive
    Eigen::VectorXd Omega;  // rad/fs, symmetric about 0
    double hq = 0, hW = 0;
    long q_offset = 0;      // q(j) = (q_offset + j + 1/2) hq

    int nq() const { return int(q.size()); }
    int nW() const { return int(Omega.size()); }
    int size() const { return nq() * nW(); }
    int index(int iq, int jW) const { return iq * nW() + jW; }
    double weight() const { return hq * hW; }
    bool same_as(const Grid2D& o) const;

    static Grid2D make(const FilterSpec& f, int nq, int nW, double margin = 0.05);
};

// Rectangular axis pair for plotting maps (not tied to the lattice).
struct Axis {
    double start = 0, step = 0;
    int n = 0;
    double at(int i) const { return start + step * i; }
};

}  // namespace twinbeam
