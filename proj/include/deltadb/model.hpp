/**@file   model.hpp
 * @brief  Decomposed mixed-integer problems and their instance file format
 *
 * A DecomposedMip is min { c'x + d'y | Ax + By (sense) g, x >= 0, y >= 0, y integer }
 * with all data integral, together with a block structure consisting of blocks
 * (disjoint row and column sets) and linking rows. There are no linking columns.
 *
 * All indices are 0-based, in files and in the API. Block q of the API is the
 * (q+1)-th block of the file's "blocks" array.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltadb/lp.hpp"
#include "deltadb/rat_matrix.hpp"
#include "deltadb/rational.hpp"

namespace deltadb {

struct Block {
    std::vector<std::size_t> x_cols;
    std::vector<std::size_t> y_cols;
    std::vector<std::size_t> rows;  ///< block-local rows; disjoint from linking rows

    friend bool operator==(const Block&, const Block&) = default;
};

struct DecomposedMip {
    std::string name;
    std::vector<Integer> c;  ///< length n
    std::vector<Integer> d;  ///< length l
    RatMatrix A;             ///< m x n, integral
    RatMatrix B;             ///< m x l, integral
    std::vector<Integer> g;  ///< length m
    std::vector<Sense> senses;
    std::vector<Block> blocks;
    std::vector<std::size_t> linking_rows;
    /// x columns that are additionally required to be integer (single sourcing).
    std::vector<std::size_t> integer_x;
    std::optional<Integer> delta;
    nlohmann::json meta = nlohmann::json::object();

    std::size_t num_x() const { return c.size(); }
    std::size_t num_y() const { return d.size(); }
    std::size_t num_rows() const { return g.size(); }
    std::size_t num_blocks() const { return blocks.size(); }

    /// Throws InvariantViolation naming the first violated invariant.
    void validate() const;

    /// LP relaxation over the variable vector (x, y).
    LpProblem lp_relaxation() const;

    /// Integer-constrained positions in the (x, y) variable vector, ascending.
    std::vector<std::size_t> integer_columns() const;

    friend bool operator==(const DecomposedMip&, const DecomposedMip&) = default;
};

/// Exact slices of one block. Rows of A_q/B_q follow `rows`, rows of
/// A_q_row/B_q_row follow `linking_rows`.
struct BlockView {
    std::size_t q = 0;
    std::vector<std::size_t> x_cols, y_cols, rows, linking_rows;
    RatMatrix A_q, B_q, A_q_row, B_q_row;
    std::vector<Integer> g_q, g_row, c_q, d_q;
};

BlockView block_view(const DecomposedMip& m, std::size_t q);

/// Canonical text form; load(to_text(m)) == m and to_text(load(f)) == f for canonical f.
std::string to_text(const DecomposedMip& m);
DecomposedMip from_text(const std::string& text);

DecomposedMip load(const std::filesystem::path& path);
void store(const DecomposedMip& m, const std::filesystem::path& path);

/// Integer matrix file: {"cols": n, "rows": [{"0": 5}, ...]} with one row per line.
/// An instance file is accepted as well and yields its A matrix.
RatMatrix load_matrix(const std::filesystem::path& path);
RatMatrix matrix_from_text(const std::string& text);
std::string matrix_to_text(const RatMatrix& a);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace deltadb
