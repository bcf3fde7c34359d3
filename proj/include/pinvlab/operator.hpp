#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <variant>

#include "pinvlab/matrix.hpp"

namespace pinvlab {

// Structured linear map over complex scalars: dense, diagonal (square), or a
// direct sum of two operators. Direct sums stay structural nodes; they are
// materialized to block-diagonal form only on demand, so blockwise identities
// can be exercised both structurally and against the dense route.
//
// Operators are immutable after construction and safe to share across threads.
class Operator {
public:
    static Operator dense(Matrix entries) {
        if (entries.rows() < 1 || entries.cols() < 1)
            throw std::invalid_argument("dense operator needs positive dimensions");
        if (!entries.all_finite())
            throw std::invalid_argument("dense operator entries must be finite");
        Operator op;
        op.rows_ = entries.rows();
        op.cols_ = entries.cols();
        op.node_ = DenseNode{std::move(entries)};
        return op;
    }

    static Operator diagonal(Vector diag) {
        if (diag.empty()) throw std::invalid_argument("diagonal operator needs positive dimension");
        for (auto z : diag)
            if (!is_finite(z)) throw std::invalid_argument("diagonal entries must be finite");
        Operator op;
        op.rows_ = op.cols_ = static_cast<int>(diag.size());
        op.node_ = DiagNode{std::move(diag)};
        return op;
    }

    static Operator zero(int rows, int cols) { return dense(Matrix::zero(rows, cols)); }

    static Operator identity(int n) { return dense(Matrix::identity(n)); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool is_dense() const { return std::holds_alternative<DenseNode>(node_); }
    bool is_diagonal() const { return std::holds_alternative<DiagNode>(node_); }
    bool is_direct_sum() const { return std::holds_alternative<SumNode>(node_); }

    const Operator& left() const { return *std::get<SumNode>(node_).left; }
    const Operator& right() const { return *std::get<SumNode>(node_).right; }
    const Vector& diag() const { return std::get<DiagNode>(node_).diag; }

    friend Operator direct_sum(const Operator& a, const Operator& b);
    friend Vector apply(const Operator& op, const Vector& x);
    friend Operator adjoint(const Operator& op);
    friend Matrix materialize(const Operator& op);

private:
    struct DenseNode {
        Matrix entries;
    };
    struct DiagNode {
        Vector diag;
    };
    struct SumNode {
        std::shared_ptr<const Operator> left;
        std::shared_ptr<const Operator> right;
    };

    Operator() = default;

    std::variant<DenseNode, DiagNode, SumNode> node_;
    int rows_ = 0;
    int cols_ = 0;
};

// Block-diagonal pairing on H1 (+) H2; vectors pair by concatenation, left
// block first.
inline Operator direct_sum(const Operator& a, const Operator& b) {
    Operator op;
    op.rows_ = a.rows() + b.rows();
    op.cols_ = a.cols() + b.cols();
    op.node_ = Operator::SumNode{std::make_shared<Operator>(a), std::make_shared<Operator>(b)};
    return op;
}

inline Vector apply(const Operator& op, const Vector& x) {
    if (static_cast<int>(x.size()) != op.cols())
        throw std::invalid_argument("apply: vector dimension does not match operator columns");
    if (op.is_dense()) return std::get<Operator::DenseNode>(op.node_).entries * x;
    if (op.is_diagonal()) {
        const Vector& d = op.diag();
        Vector y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = d[i] * x[i];
        return y;
    }
    const Operator& l = op.left();
    const Operator& r = op.right();
    Vector xl(x.begin(), x.begin() + l.cols());
    Vector xr(x.begin() + l.cols(), x.end());
    Vector yl = pinvlab::apply(l, xl);
    Vector yr = pinvlab::apply(r, xr);
    yl.insert(yl.end(), yr.begin(), yr.end());
    return yl;
}

// Conjugate transpose. Structure-preserving: the adjoint of a diagonal is the
// conjugate diagonal, and the adjoint of a direct sum is the direct sum of
// the adjoints.
inline Operator adjoint(const Operator& op) {
    if (op.is_dense())
        return Operator::dense(std::get<Operator::DenseNode>(op.node_).entries.adjoint());
    if (op.is_diagonal()) {
        Vector d = op.diag();
        for (auto& z : d) z = std::conj(z);
        return Operator::diagonal(std::move(d));
    }
    return direct_sum(adjoint(op.left()), adjoint(op.right()));
}

inline Matrix materialize(const Operator& op) {
    if (op.is_dense()) return std::get<Operator::DenseNode>(op.node_).entries;
    if (op.is_diagonal()) {
        Matrix m(op.rows(), op.cols());
        const Vector& d = op.diag();
        for (int i = 0; i < op.rows(); ++i) m(i, i) = d[i];
        return m;
    }
    Matrix l = materialize(op.left());
    Matrix r = materialize(op.right());
    Matrix m(op.rows(), op.cols());
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j) m(i, j) = l(i, j);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) m(i + l.rows(), j + l.cols()) = r(i, j);
    return m;
}

// Product a*b. Keeps structure where it is free: diagonal*diagonal stays
// diagonal, direct sums with matching splits compose blockwise; everything
// else goes through the dense product.
inline Operator compose(const Operator& a, const Operator& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("compose: inner dimensions differ");
    if (a.is_diagonal() && b.is_diagonal()) {
        const Vector& da = a.diag();
        const Vector& db = b.diag();
        Vector d(da.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = da[i] * db[i];
        return Operator::diagonal(std::move(d));
    }
    if (a.is_direct_sum() && b.is_direct_sum() && a.left().cols() == b.left().rows() &&
        a.right().cols() == b.right().rows()) {
        return direct_sum(compose(a.left(), b.left()), compose(a.right(), b.right()));
    }
    return Operator::dense(materialize(a) * materialize(b));
}

}  // namespace pinvlab
