#include "tangentcat/linalg.hpp"

#include "tangentcat/errors.hpp"

#include <sstream>

namespace tangentcat::linalg {

Matrix Matrix::identity(Domain dom, std::size_t n) {
    Matrix m(dom, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ArityMismatch("matrix product " + std::to_string(rows_) + "x" +
                                              std::to_string(cols_) + " * " + std::to_string(o.rows_) +
                                              "x" + std::to_string(o.cols_));
    Matrix r(dom_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o(k, j) == 0) continue;
                r(i, j) = dom_.add(r(i, j), dom_.mul(x, o(k, j)));
            }
        }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return dom_ == o.dom_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(dom_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) return Matrix();
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != parts[0].cols()) throw ArityMismatch("vstack of matrices with different widths");
        rows += p.rows();
    }
    Matrix r(parts[0].domain(), rows, parts[0].cols());
    std::size_t at = 0;
    for (const auto& p : parts)
        for (std::size_t i = 0; i < p.rows(); ++i, ++at)
            for (std::size_t j = 0; j < p.cols(); ++j) r(at, j) = p(i, j);
    return r;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << format_value((*this)(i, j));
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

std::optional<Matrix> invert_permutation(const Matrix& m) {
    std::size_t n = m.rows();
    Matrix r(m.domain(), n, n);
    std::vector<bool> col_used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hits = 0, at = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) == 0) continue;
            if (m(i, j) != 1) return std::nullopt;
            ++hits;
            at = j;
        }
        if (hits != 1 || col_used[at]) return std::nullopt;
        col_used[at] = true;
        r(at, i) = 1;
    }
    return r;
}

std::optional<Matrix> invert_field(const Matrix& m) {
    const Domain& d = m.domain();
    std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(d, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (a(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        mpq_class s = d.inv(a(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) = d.mul(a(c, j), s);
            inv(c, j) = d.mul(inv(c, j), s);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            mpq_class f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) = d.sub(a(r, j), d.mul(f, a(c, j)));
                inv(r, j) = d.sub(inv(r, j), d.mul(f, inv(c, j)));
            }
        }
    }
    return inv;
}

// Equations u_0 x_0 - u_i x_i = 0 with signed rational entries.
std::vector<std::vector<mpq_class>> equations(const std::vector<Matrix>& cospan, std::size_t vars) {
    std::vector<std::vector<mpq_class>> rows;
    if (cospan.size() < 2) return rows;
    std::size_t z = cospan[0].rows();
    std::vector<std::size_t> offset(cospan.size(), 0);
    for (std::size_t i = 1; i < cospan.size(); ++i) offset[i] = offset[i - 1] + cospan[i - 1].cols();
    for (std::size_t i = 1; i < cospan.size(); ++i)
        for (std::size_t r = 0; r < z; ++r) {
            std::vector<mpq_class> row(vars);
            for (std::size_t j = 0; j < cospan[0].cols(); ++j) row[j] = cospan[0](r, j);
            for (std::size_t j = 0; j < cospan[i].cols(); ++j) row[offset[i] + j] -= cospan[i](r, j);
            rows.push_back(std::move(row));
        }
    return rows;
}

std::optional<ConeSolution> solve_field(std::vector<std::vector<mpq_class>> k, std::size_t vars, Domain d) {
    for (auto& row : k)
        for (auto& x : row) x = d.reduce(x);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < vars && r < k.size(); ++c) {
        std::size_t piv = k.size();
        for (std::size_t i = r; i < k.size(); ++i)
            if (k[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == k.size()) continue;
        std::swap(k[piv], k[r]);
        mpq_class s = d.inv(k[r][c]);
        for (auto& x : k[r]) x = d.mul(x, s);
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i == r || k[i][c] == 0) continue;
            mpq_class f = k[i][c];
            for (std::size_t j = 0; j < vars; ++j) k[i][j] = d.sub(k[i][j], d.mul(f, k[r][j]));
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(vars, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    ConeSolution sol;
    sol.variables = vars;
    for (std::size_t c = 0; c < vars; ++c)
        if (!is_pivot[c]) sol.free.push_back(c);
    sol.param = Matrix(d, vars, sol.free.size());
    for (std::size_t t = 0; t < sol.free.size(); ++t) {
        std::size_t f = sol.free[t];
        sol.param(f, t) = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.param(pivot_col[i], t) = d.neg(k[i][f]);
    }
    return sol;
}

std::optional<ConeSolution> solve_natural(std::vector<std::vector<mpq_class>> k, std::size_t vars) {
    // expr[v] expresses variable v through the variables still alive.
    std::vector<std::vector<mpq_class>> expr(vars, std::vector<mpq_class>(vars));
    for (std::size_t v = 0; v < vars; ++v) expr[v][v] = 1;
    std::vector<bool> alive(vars, true);

    auto substitute = [&](std::size_t v, const std::vector<mpq_class>& value) {
        auto apply = [&](std::vector<mpq_class>& row) {
            if (row[v] == 0) return;
            mpq_class c = row[v];
            row[v] = 0;
            for (std::size_t j = 0; j < vars; ++j)
                if (value[j] != 0) row[j] += c * value[j];
        };
        for (auto& row : k) apply(row);
        for (auto& e : expr) apply(e);
        alive[v] = false;
    };

    for (;;) {
        bool progress = false;
        bool pending = false;
        for (auto& row : k) {
            std::vector<std::size_t> nz;
            for (std::size_t j = 0; j < vars; ++j)
                if (row[j] != 0) nz.push_back(j);
            if (nz.empty()) continue;
            pending = true;
            bool all_pos = true, all_neg = true;
            for (auto j : nz) {
                if (row[j] < 0) all_pos = false;
                if (row[j] > 0) all_neg = false;
            }
            if (all_pos || all_neg) {
                std::vector<mpq_class> zero(vars);
                for (auto j : nz) substitute(j, zero);
                progress = true;
                break;
            }
            for (auto v : nz) {
                if (abs(row[v]) != 1) continue;
                bool opposite = true;
                for (auto j : nz)
                    if (j != v && sgn(row[j]) == sgn(row[v])) opposite = false;
                if (!opposite) continue;
                std::vector<mpq_class> value(vars);
                for (auto j : nz)
                    if (j != v) value[j] = -row[j] / row[v];
                substitute(v, value);
                progress = true;
                break;
            }
            if (progress) break;
        }
        if (!pending) break;
        if (!progress) return std::nullopt;
    }

    Domain d = Domain::natural();
    ConeSolution sol;
    sol.variables = vars;
    for (std::size_t v = 0; v < vars; ++v)
        if (alive[v]) sol.free.push_back(v);
    sol.param = Matrix(d, vars, sol.free.size());
    for (std::size_t v = 0; v < vars; ++v)
        for (std::size_t t = 0; t < sol.free.size(); ++t) sol.param(v, t) = expr[v][sol.free[t]];
    return sol;
}

} // namespace

std::optional<Matrix> invert(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (m.domain().is_field()) return invert_field(m);
    return invert_permutation(m);
}

std::optional<ConeSolution> solve_cospan(const std::vector<Matrix>& cospan, Domain dom) {
    std::size_t vars = 0;
    for (std::size_t i = 0; i < cospan.size(); ++i) {
        if (cospan[i].rows() != cospan[0].rows())
            throw ArityMismatch("cospan legs have different codomains");
        vars += cospan[i].cols();
    }
    auto k = equations(cospan, vars);
    if (dom.is_field()) return solve_field(std::move(k), vars, dom);
    return solve_natural(std::move(k), vars);
}

} // namespace tangentcat::linalg
