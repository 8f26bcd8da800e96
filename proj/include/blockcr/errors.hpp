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

#ifndef BLOCKCR_ERRORS_HPP
#define BLOCKCR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockcr {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An array length or block shape does not satisfy the constructor contract.
/// The message names the offending array and index.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A block that must be Hermitian exceeds the ingest asymmetry gate.
class NotHermitian : public Error {
public:
    NotHermitian(const std::string& msg, double max_asymmetry)
        : Error(msg), max_asymmetry(max_asymmetry) {}
    double max_asymmetry;
};

/// A NaN or infinity was about to enter a stored block.
class NonFiniteEntry : public Error {
public:
    using Error::Error;
};

/// Cholesky breakdown: the pivot at `pivot_index` (0-based row) was
/// nonpositive or non-finite. This is the primitive indefiniteness signal.
class Indefinite : public Error {
public:
    Indefinite(const std::string& msg, std::size_t pivot_index)
        : Error(msg), pivot_index(pivot_index) {}
    std::size_t pivot_index;
};

/// A diagonal block failed to factor during the recursive reduction.
/// `level` is the recursion depth (0 = input system); `block_index` is the
/// 1-based diagonal block within that level's system.
class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(const std::string& msg, std::size_t level, std::size_t block_index)
        : Error(msg), level(level), block_index(block_index) {}
    std::size_t level;
    std::size_t block_index;
};

class IoError : public Error {
public:
    using Error::Error;
};

class BadMagic : public IoError {
public:
    using IoError::IoError;
};

class BadVersion : public IoError {
public:
    using IoError::IoError;
};

class Truncated : public IoError {
public:
    using IoError::IoError;
};

class SinkFailure : public IoError {
public:
    using IoError::IoError;
};

/// Dense reference factorization broke down (oracle side).
class DenseFactorizationFailed : public Error {
public:
    DenseFactorizationFailed(const std::string& msg, std::size_t pivot_row)
        : Error(msg), pivot_row(pivot_row) {}
    std::size_t pivot_row;
};

/// The assembled dense matrix is not positive definite (oracle side).
class DenseIndefinite : public Error {
public:
    DenseIndefinite(const std::string& msg, std::size_t pivot_row)
        : Error(msg), pivot_row(pivot_row) {}
    std::size_t pivot_row;
};

} // namespace blockcr

#endif // BLOCKCR_ERRORS_HPP
