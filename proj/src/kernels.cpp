/*
 * Copyright 2026 the blockcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "blockcr/kernels.hpp"

#include <cmath>
#include <sstream>

namespace blockcr {

CholeskyFactor CholeskyFactor::from_lower(Block lower) {
    if (lower.rows() != lower.cols()) {
        throw ShapeMismatch("Cholesky factor must be square");
    }
    const std::size_t m = lower.rows();
    for (std::size_t i = 0; i < m; ++i) {
        if (lower(i, i).imag() != 0.0 || !(lower(i, i).real() > 0.0)) {
            throw ShapeMismatch("Cholesky factor diagonal must be real and positive");
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (lower(i, j) != Complex(0.0, 0.0)) {
                throw ShapeMismatch("Cholesky factor must be lower triangular");
            }
        }
    }
    return CholeskyFactor(std::move(lower));
}

CholeskyFactor CholeskyFactor::identity(std::size_t m) {
    return CholeskyFactor(Block::identity(m));
}

CholeskyFactor cholesky(const HermitianBlock& matrix) {
    const std::size_t m = matrix.dim();
    Block lower(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum = matrix(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= lower(i, k) * std::conj(lower(j, k));
            }
            lower(i, j) = sum / lower(j, j).real();
        }
        double pivot = matrix(i, i).real();
        for (std::size_t k = 0; k < i; ++k) {
            pivot -= std::norm(lower(i, k));
        }
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            std::ostringstream os;
            os << "Cholesky pivot " << i << " is " << pivot << "; matrix is not positive definite";
            throw Indefinite(os.str(), i);
        }
        lower(i, i) = Complex(std::sqrt(pivot), 0.0);
    }
    return CholeskyFactor(std::move(lower));
}

Block solve_lower(const CholeskyFactor& factor, const Block& rhs) {
    const std::size_t m = factor.dim();
    if (rhs.rows() != m) {
        throw ShapeMismatch("solve_lower: rhs row count does not match factor dimension");
    }
    const std::size_t p = rhs.cols();
    Block x(m, p);
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t i = 0; i < m; ++i) {
            Complex sum = rhs(i, c);
            for (std::size_t k = 0; k < i; ++k) {
                sum -= factor(i, k) * x(k, c);
            }
            x(i, c) = sum / factor(i, i).real();
        }
    }
    return x;
}

Block solve_hermitian(const CholeskyFactor& factor, const Block& rhs) {
    const std::size_t m = factor.dim();
    if (rhs.rows() != m) {
        throw ShapeMismatch("solve_hermitian: rhs row count does not match factor dimension");
    }
    const std::size_t p = rhs.cols();
    Block x = solve_lower(factor, rhs);
    // Backward substitution with L^H: L^H x = y.
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t ii = m; ii-- > 0;) {
            Complex sum = x(ii, c);
            for (std::size_t k = ii + 1; k < m; ++k) {
                sum -= std::conj(factor(k, ii)) * x(k, c);
            }
            x(ii, c) = sum / factor(ii, ii).real();
        }
    }
    return x;
}

HermitianBlock stable_schur_term(const CholeskyFactor& factor, const Block& g) {
    const Block gt = solve_lower(factor, g);
    const std::size_t m = gt.rows();
    const std::size_t p = gt.cols();
    HermitianBuilder z(p);
    for (std::size_t i = 0; i < p; ++i) {
        double diag = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            diag += std::norm(gt(k, i));
        }
        z.set_diag(i, diag);
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < m; ++k) {
                sum += std::conj(gt(k, i)) * gt(k, j);
            }
            z.set_lower(i, j, sum);
        }
    }
    return z.finish();
}

Block matmul_acc(Complex alpha, const Block& a, MatOp op_a, const Block& b, MatOp op_b,
                 Block c) {
    const std::size_t a_rows = op_a == MatOp::plain ? a.rows() : a.cols();
    const std::size_t a_cols = op_a == MatOp::plain ? a.cols() : a.rows();
    const std::size_t b_rows = op_b == MatOp::plain ? b.rows() : b.cols();
    const std::size_t b_cols = op_b == MatOp::plain ? b.cols() : b.rows();
    if (a_cols != b_rows) {
        std::ostringstream os;
        os << "matmul_acc: inner dimensions " << a_cols << " and " << b_rows << " differ";
        throw ShapeMismatch(os.str());
    }
    if (c.rows() != a_rows || c.cols() != b_cols) {
        std::ostringstream os;
        os << "matmul_acc: accumulator is " << c.rows() << "x" << c.cols() << ", expected "
           << a_rows << "x" << b_cols;
        throw ShapeMismatch(os.str());
    }
    auto at = [&](std::size_t i, std::size_t k) {
        return op_a == MatOp::plain ? a(i, k) : std::conj(a(k, i));
    };
    auto bt = [&](std::size_t k, std::size_t j) {
        return op_b == MatOp::plain ? b(k, j) : std::conj(b(j, k));
    };
    for (std::size_t i = 0; i < a_rows; ++i) {
        for (std::size_t j = 0; j < b_cols; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < a_cols; ++k) {
                sum += at(i, k) * bt(k, j);
            }
            c(i, j) = alpha * sum + c(i, j);
        }
    }
    return c;
}

} // namespace blockcr
