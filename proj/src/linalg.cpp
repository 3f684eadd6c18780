#include "flagopp/linalg.hpp"

namespace flagopp {

int rref(Mat& m, const Field& f) {
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int pr = -1;
        for (int r = pivot_row; r < m.rows; ++r)
            if (m.at(r, col) != 0) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != pivot_row)
            for (int c = 0; c < m.cols; ++c)
                std::swap(m.at(pr, c), m.at(pivot_row, c));
        FieldElement lead = m.at(pivot_row, col);
        if (lead != 1) {
            FieldElement s = f.inv(lead);
            for (int c = 0; c < m.cols; ++c)
                m.at(pivot_row, c) = f.mul(m.at(pivot_row, c), s);
        }
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row) continue;
            FieldElement factor = m.at(r, col);
            if (factor == 0) continue;
            for (int c = 0; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(pivot_row, c)));
        }
        ++pivot_row;
    }
    return pivot_row;
}

int rank(Mat m, const Field& f) { return rref(m, f); }

Mat stack(const Mat& a, const Mat& b) {
    Mat r;
    r.rows = a.rows + b.rows;
    r.cols = a.cols;
    for (int i = 0; i < a.rows; ++i)
        for (int c = 0; c < a.cols; ++c)
            r.at(i, c) = a.at(i, c);
    for (int i = 0; i < b.rows; ++i)
        for (int c = 0; c < b.cols; ++c)
            r.at(a.rows + i, c) = b.at(i, c);
    return r;
}

Mat stack_row(const Mat& a, const std::vector<FieldElement>& v) {
    Mat r = a;
    r.rows = a.rows + 1;
    for (int c = 0; c < a.cols; ++c) r.at(a.rows, c) = v[c];
    return r;
}

Mat row_mat(const std::vector<FieldElement>& v) {
    Mat r;
    r.rows = 1;
    r.cols = int(v.size());
    for (int c = 0; c < r.cols; ++c) r.at(0, c) = v[c];
    return r;
}

bool in_rowspace(const Mat& m, const std::vector<FieldElement>& v, const Field& f) {
    return rank(stack_row(m, v), f) == m.rows;
}

void normalize_point(std::vector<FieldElement>& v, const Field& f) {
    for (auto x : v) {
        if (x == 0) continue;
        if (x != 1) {
            FieldElement s = f.inv(x);
            for (auto& y : v) y = f.mul(y, s);
        }
        return;
    }
}

namespace {

// Odometer over digits in 0..q-1, last position fastest; false on wrap.
bool advance_digits(std::vector<FieldElement>& digits, int q) {
    for (int i = int(digits.size()) - 1; i >= 0; --i) {
        if (++digits[i] < q) return true;
        digits[i] = 0;
    }
    return false;
}

} // namespace

std::vector<std::vector<FieldElement>> subspace_points(const Mat& m, const Field& f) {
    std::vector<std::vector<FieldElement>> out;
    int k = m.rows;
    // canonical coefficient tuples: first nonzero coefficient is 1
    for (int lead = 0; lead < k; ++lead) {
        std::vector<FieldElement> coef(k, 0);
        coef[lead] = 1;
        std::vector<FieldElement> tail(k - lead - 1, 0);
        bool more = true;
        while (more) {
            for (int i = lead + 1; i < k; ++i) coef[i] = tail[i - lead - 1];
            std::vector<FieldElement> v(m.cols, 0);
            for (int r = 0; r < k; ++r) {
                if (coef[r] == 0) continue;
                for (int c = 0; c < m.cols; ++c)
                    v[c] = f.add(v[c], f.mul(coef[r], m.at(r, c)));
            }
            out.push_back(std::move(v));
            if (tail.empty()) break;
            more = advance_digits(tail, f.q());
        }
    }
    return out;
}

void enumerate_rref(int rows, int cols, const Field& gf,
                    const std::function<void(const Mat&)>& fn) {
    std::vector<int> piv(rows);
    for (int i = 0; i < rows; ++i) piv[i] = i;
    auto next_pattern = [&]() {
        int i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) return false;
        ++piv[i];
        for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
        return true;
    };
    do {
        std::vector<std::pair<int, int>> free_pos;
        for (int r = 0; r < rows; ++r)
            for (int c = piv[r] + 1; c < cols; ++c) {
                bool is_piv = false;
                for (int r2 = 0; r2 < rows; ++r2)
                    if (piv[r2] == c) { is_piv = true; break; }
                if (!is_piv) free_pos.emplace_back(r, c);
            }
        std::vector<FieldElement> vals(free_pos.size(), 0);
        bool more = true;
        while (more) {
            Mat m;
            m.rows = rows;
            m.cols = cols;
            for (int r = 0; r < rows; ++r) m.at(r, piv[r]) = 1;
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                m.at(free_pos[k].first, free_pos[k].second) = vals[k];
            fn(m);
            if (free_pos.empty()) break;
            more = advance_digits(vals, gf.q());
        }
    } while (next_pattern());
}

} // namespace flagopp
