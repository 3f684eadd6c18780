#pragma once

#include <array>
#include <functional>
#include <cstdint>
#include <string>
#include <vector>

#include "flagopp/field.hpp"

namespace flagopp {

// Row-major matrix over GF(q), at most 6x6. Projective subspaces are stored
// as reduced row echelon bases of their underlying vector subspaces, so two
// subspaces are equal iff their matrices are byte-identical.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::array<FieldElement, 36> a{};

    FieldElement& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    FieldElement at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

    bool operator==(const Mat& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (int i = 0; i < rows * cols; ++i)
            if (a[i] != o.a[i]) return false;
        return true;
    }

    // Stable byte key for hashing / canonical comparison.
    std::string key() const {
        std::string s;
        s.reserve(2 + rows * cols);
        s.push_back(char(rows));
        s.push_back(char(cols));
        for (int i = 0; i < rows * cols; ++i) s.push_back(char(a[i]));
        return s;
    }
};

// In-place reduction to reduced row echelon form; returns the rank.
int rref(Mat& m, const Field& f);

int rank(Mat m, const Field& f);

// Stacks the rows of a and b into one matrix (rows <= 6 total).
Mat stack(const Mat& a, const Mat& b);

// Appends a single row vector.
Mat stack_row(const Mat& a, const std::vector<FieldElement>& v);

// v as a 1xN matrix.
Mat row_mat(const std::vector<FieldElement>& v);

// True iff the row vector v lies in the row space of m (m must be in RREF
// with known rank = m.rows).
bool in_rowspace(const Mat& m, const std::vector<FieldElement>& v, const Field& f);

// Canonical projective representative: scales v so its first nonzero entry
// is 1. v must be nonzero.
void normalize_point(std::vector<FieldElement>& v, const Field& f);

// All canonical projective points of the row space of m (m in RREF, full
// rank). Points come out as coordinate vectors, not yet normalized.
std::vector<std::vector<FieldElement>> subspace_points(const Mat& m, const Field& f);

// Enumerates every RREF matrix of the given shape over GF(q) in
// deterministic order: pivot-column patterns lexicographically, then free
// entries by odometer with the last free position varying fastest.
void enumerate_rref(int rows, int cols, const Field& gf,
                    const std::function<void(const Mat&)>& fn);

} // namespace flagopp
