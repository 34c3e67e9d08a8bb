/**@file   model.cpp
 * @brief  Instance validation, block views and the line-oriented JSON format
 */
#include "deltadb/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "deltadb/errors.hpp"

namespace deltadb {

using nlohmann::json;

namespace {

// Line numbers of the array elements of a few top-level keys, so that
// semantic errors in rows and blocks can be located in the source text.
struct Layout {
    std::map<std::string, std::size_t> key_line;
    std::map<std::string, std::vector<std::size_t>> element_lines;

    std::size_t key(const std::string& k) const {
        auto it = key_line.find(k);
        return it == key_line.end() ? 0 : it->second;
    }
    std::size_t element(const std::string& k, std::size_t i) const {
        auto it = element_lines.find(k);
        if (it == element_lines.end() || i >= it->second.size())
            return key(k);
        return it->second[i];
    }
};

Layout scan_layout(const std::string& text) {
    Layout out;
    std::size_t line = 1;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::string current, last_string, top_key;
    std::size_t last_string_line = 0;
    for (char ch : text) {
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (ch == '\\')
                escaped = true;
            else if (ch == '"') {
                in_string = false;
                last_string = current;
            } else
                current += ch;
            if (ch == '\n')
                ++line;
            continue;
        }
        switch (ch) {
        case '\n': ++line; break;
        case '"':
            in_string = true;
            current.clear();
            last_string_line = line;
            break;
        case ':':
            if (depth == 1) {
                top_key = last_string;
                out.key_line.emplace(top_key, last_string_line);
            }
            break;
        case '{':
        case '[':
            if (depth == 2)
                out.element_lines[top_key].push_back(line);
            ++depth;
            break;
        case '}':
        case ']': --depth; break;
        default: break;
        }
    }
    return out;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte));
    }
}

// Integer literal: JSON integer, integral float, or a decimal string (for big values).
// Anything else is rejected with "<what> must be integral".
Integer to_integer(const json& v, const std::string& what, std::size_t line, const std::string& field) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned())
            return Integer(std::to_string(v.get<std::uint64_t>()));
        return Integer(std::to_string(v.get<std::int64_t>()));
    }
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) < 9.0e15)
            return Integer(std::to_string(static_cast<long long>(d)));
        throw ParseError(what + " must be integral", line, field);
    }
    if (v.is_string()) {
        Rational r;
        try {
            r = Rational::parse(v.get<std::string>());
        } catch (const DomainError&) {
            throw ParseError("invalid number '" + v.get<std::string>() + "'", line, field);
        }
        if (!r.is_integer())
            throw ParseError(what + " must be integral", line, field);
        return r.num();
    }
    throw ParseError("expected a number", line, field);
}

std::size_t to_index(const json& v, std::size_t bound, std::size_t line, const std::string& field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ParseError("expected a nonnegative index", line, field);
    auto idx = v.get<std::uint64_t>();
    if (idx >= bound)
        throw ParseError("index " + std::to_string(idx) + " out of range", line, field);
    return static_cast<std::size_t>(idx);
}

std::size_t key_index(const std::string& key, std::size_t bound, std::size_t line, const std::string& field) {
    if (key.empty() || key.size() > 18 || !std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw ParseError("invalid index key '" + key + "'", line, field);
    auto idx = std::stoull(key);
    if (idx >= bound)
        throw ParseError("index " + key + " out of range", line, field);
    return static_cast<std::size_t>(idx);
}

const json& require(const json& obj, const char* key, std::size_t line, const std::string& field) {
    if (!obj.is_object())
        throw ParseError("expected an object", line, field);
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing field '") + key + "'", line, field);
    return *it;
}

// Sparse {"idx": value} map into a dense row.
void read_sparse(const json& obj, std::vector<Rational>& dense, const std::string& what, std::size_t line,
                 const std::string& field) {
    if (!obj.is_object())
        throw ParseError("expected an object of index:value pairs", line, field);
    for (const auto& [k, v] : obj.items()) {
        std::size_t idx = key_index(k, dense.size(), line, field);
        dense[idx] = Rational(to_integer(v, what, line, field));
    }
}

std::vector<std::size_t> read_index_list(const json& arr, std::size_t bound, std::size_t line, const std::string& field) {
    if (!arr.is_array())
        throw ParseError("expected an array of indices", line, field);
    std::vector<std::size_t> out;
    out.reserve(arr.size());
    for (const auto& v : arr)
        out.push_back(to_index(v, bound, line, field));
    return out;
}

std::string int_text(const Integer& v) {
    if (v.fits_slong_p())
        return v.get_str();
    return "\"" + v.get_str() + "\"";
}

std::string sparse_text(std::span<const Rational> row) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero())
            continue;
        if (!first)
            out += ", ";
        first = false;
        out += "\"" + std::to_string(i) + "\": " + int_text(row[i].num());
    }
    return out + "}";
}

std::string sparse_text(const std::vector<Integer>& v) {
    RatVector r(v.begin(), v.end());
    return sparse_text(std::span<const Rational>(r));
}

std::string list_text(const std::vector<std::size_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + std::to_string(v[i]);
    return out + "]";
}

void check_integral(const RatMatrix& m, const char* what) {
    if (!m.is_integral())
        throw InvariantViolation(std::string(what) + " must be integral", "non-integral entry");
}

}  // namespace

void DecomposedMip::validate() const {
    const std::size_t n = num_x(), l = num_y(), m = num_rows();
    if (A.rows() != m || A.cols() != n || B.rows() != m || B.cols() != l || senses.size() != m)
        throw InvariantViolation("dimension mismatch", "A, B, g, senses, c and d disagree");
    check_integral(A, "A");
    check_integral(B, "B");
    if (delta && *delta <= 0)
        throw InvariantViolation("delta must be positive", "delta = " + delta->get_str());
    if (blocks.empty() && n + l > 0)
        throw InvariantViolation("column not assigned", "no blocks given");

    std::vector<int> x_owner(n, -1), y_owner(l, -1), row_owner(m, -1);
    auto claim = [](std::vector<int>& owner, std::size_t idx, int who, const char* kind) {
        if (idx >= owner.size())
            throw InvariantViolation("index out of range", std::string(kind) + " " + std::to_string(idx));
        if (owner[idx] != -1)
            throw InvariantViolation(std::string(kind) + " not uniquely assigned",
                                     std::string(kind) + " " + std::to_string(idx));
        owner[idx] = who;
    };
    for (std::size_t q = 0; q < blocks.size(); ++q) {
        const Block& b = blocks[q];
        if (b.x_cols.empty() && b.y_cols.empty())
            throw InvariantViolation("block has no columns", "block " + std::to_string(q));
        for (auto j : b.x_cols)
            claim(x_owner, j, static_cast<int>(q), "column");
        for (auto j : b.y_cols)
            claim(y_owner, j, static_cast<int>(q), "column");
        for (auto i : b.rows)
            claim(row_owner, i, static_cast<int>(q), "row");
    }
    for (auto i : linking_rows)
        claim(row_owner, i, -2, "row");
    for (std::size_t j = 0; j < n; ++j)
        if (x_owner[j] == -1)
            throw InvariantViolation("column not assigned", "x column " + std::to_string(j));
    for (std::size_t j = 0; j < l; ++j)
        if (y_owner[j] == -1)
            throw InvariantViolation("column not assigned", "y column " + std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) {
        if (row_owner[i] == -1)
            throw InvariantViolation("row not assigned", "row " + std::to_string(i));
        if (row_owner[i] < 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!A(i, j).is_zero() && x_owner[j] != row_owner[i])
                throw InvariantViolation("row couples blocks", "row " + std::to_string(i));
        for (std::size_t j = 0; j < l; ++j)
            if (!B(i, j).is_zero() && y_owner[j] != row_owner[i])
                throw InvariantViolation("row couples blocks", "row " + std::to_string(i));
    }
    std::vector<bool> seen(n, false);
    for (auto j : integer_x) {
        if (j >= n)
            throw InvariantViolation("index out of range", "integer x column " + std::to_string(j));
        if (seen[j])
            throw InvariantViolation("integrality mark repeated", "x column " + std::to_string(j));
        seen[j] = true;
    }
    if (!meta.is_object())
        throw InvariantViolation("meta must be an object", "meta");
}

LpProblem DecomposedMip::lp_relaxation() const {
    const std::size_t n = num_x(), l = num_y();
    RatVector obj;
    obj.reserve(n + l);
    for (const auto& v : c)
        obj.emplace_back(v);
    for (const auto& v : d)
        obj.emplace_back(v);
    LpProblem p(std::move(obj));
    RatVector row(n + l);
    for (std::size_t i = 0; i < num_rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            row[j] = A(i, j);
        for (std::size_t j = 0; j < l; ++j)
            row[n + j] = B(i, j);
        p.add_row(row, senses[i], Rational(g[i]));
    }
    return p;
}

std::vector<std::size_t> DecomposedMip::integer_columns() const {
    std::vector<std::size_t> out(integer_x.begin(), integer_x.end());
    std::sort(out.begin(), out.end());
    for (std::size_t j = 0; j < num_y(); ++j)
        out.push_back(num_x() + j);
    return out;
}

BlockView block_view(const DecomposedMip& m, std::size_t q) {
    if (q >= m.num_blocks())
        throw DomainError("block index " + std::to_string(q) + " out of range (k = " + std::to_string(m.num_blocks()) + ")");
    const Block& b = m.blocks[q];
    BlockView v;
    v.q = q;
    v.x_cols = b.x_cols;
    v.y_cols = b.y_cols;
    v.rows = b.rows;
    v.linking_rows = m.linking_rows;
    v.A_q = m.A.submatrix(b.rows, b.x_cols);
    v.B_q = m.B.submatrix(b.rows, b.y_cols);
    v.A_q_row = m.A.submatrix(m.linking_rows, b.x_cols);
    v.B_q_row = m.B.submatrix(m.linking_rows, b.y_cols);
    for (auto i : b.rows)
        v.g_q.push_back(m.g[i]);
    for (auto i : m.linking_rows)
        v.g_row.push_back(m.g[i]);
    for (auto j : b.x_cols)
        v.c_q.push_back(m.c[j]);
    for (auto j : b.y_cols)
        v.d_q.push_back(m.d[j]);
    return v;
}

std::string to_text(const DecomposedMip& m) {
    const std::size_t n = m.num_x(), l = m.num_y();
    std::ostringstream os;
    os << "{\n";
    os << "  \"format\": \"dmip/1\",\n";
    os << "  \"name\": " << json(m.name).dump() << ",\n";
    os << "  \"dims\": {\"x\": " << n << ", \"y\": " << l << "},\n";
    os << "  \"objective\": {\"x\": " << sparse_text(m.c) << ", \"y\": " << sparse_text(m.d) << "},\n";
    os << "  \"rows\": [";
    for (std::size_t i = 0; i < m.num_rows(); ++i) {
        os << (i ? ",\n" : "\n");
        os << "    {\"x\": " << sparse_text(m.A.row(i)) << ", \"y\": " << sparse_text(m.B.row(i))
           << ", \"sense\": \"" << to_string(m.senses[i]) << "\", \"rhs\": " << int_text(m.g[i]) << "}";
    }
    os << (m.num_rows() ? "\n  ],\n" : "],\n");
    os << "  \"blocks\": [";
    for (std::size_t q = 0; q < m.num_blocks(); ++q) {
        const Block& b = m.blocks[q];
        os << (q ? ",\n" : "\n");
        os << "    {\"x\": " << list_text(b.x_cols) << ", \"y\": " << list_text(b.y_cols)
           << ", \"rows\": " << list_text(b.rows) << "}";
    }
    os << (m.num_blocks() ? "\n  ],\n" : "],\n");
    os << "  \"linking_rows\": " << list_text(m.linking_rows) << ",\n";
    os << "  \"integrality\": {\"y\": \"all\", \"x\": " << list_text(m.integer_x) << "},\n";
    if (m.delta)
        os << "  \"delta\": " << int_text(*m.delta) << ",\n";
    os << "  \"meta\": " << m.meta.dump() << "\n";
    os << "}\n";
    return os.str();
}

DecomposedMip from_text(const std::string& text) {
    const json doc = parse_json(text);
    const Layout layout = scan_layout(text);
    if (!doc.is_object())
        throw ParseError("top level must be an object", 1);

    const json& format = require(doc, "format", layout.key("format"), "format");
    if (!format.is_string() || format.get<std::string>() != "dmip/1")
        throw ParseError("unsupported format (expected \"dmip/1\")", layout.key("format"), "format");

    DecomposedMip m;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string())
            throw ParseError("expected a string", layout.key("name"), "name");
        m.name = it->get<std::string>();
    }

    const std::size_t dims_line = layout.key("dims");
    const json& dims = require(doc, "dims", dims_line, "dims");
    const std::size_t n = to_index(require(dims, "x", dims_line, "dims"), std::numeric_limits<std::uint32_t>::max(), dims_line, "dims.x");
    const std::size_t l = to_index(require(dims, "y", dims_line, "dims"), std::numeric_limits<std::uint32_t>::max(), dims_line, "dims.y");

    const std::size_t obj_line = layout.key("objective");
    const json& obj = require(doc, "objective", obj_line, "objective");
    {
        RatVector cx(n), dy(l);
        if (auto it = obj.find("x"); it != obj.end())
            read_sparse(*it, cx, "c", obj_line, "objective.x");
        if (auto it = obj.find("y"); it != obj.end())
            read_sparse(*it, dy, "d", obj_line, "objective.y");
        for (const auto& v : cx)
            m.c.push_back(v.num());
        for (const auto& v : dy)
            m.d.push_back(v.num());
    }

    const json& rows = require(doc, "rows", layout.key("rows"), "rows");
    if (!rows.is_array())
        throw ParseError("expected an array", layout.key("rows"), "rows");
    m.A = RatMatrix(0, n);
    m.B = RatMatrix(0, l);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t line = layout.element("rows", i);
        const std::string field = "rows[" + std::to_string(i) + "]";
        const json& r = rows[i];
        if (!r.is_object())
            throw ParseError("expected an object", line, field);
        RatVector ax(n), by(l);
        if (auto it = r.find("x"); it != r.end())
            read_sparse(*it, ax, "A", line, field + ".x");
        if (auto it = r.find("y"); it != r.end())
            read_sparse(*it, by, "B", line, field + ".y");
        const json& sense = require(r, "sense", line, field);
        if (!sense.is_string())
            throw ParseError("expected a sense string", line, field + ".sense");
        try {
            m.senses.push_back(parse_sense(sense.get<std::string>()));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line, field + ".sense");
        }
        m.g.push_back(to_integer(require(r, "rhs", line, field), "g", line, field + ".rhs"));
        m.A.append_row(ax);
        m.B.append_row(by);
    }
    const std::size_t num_rows = rows.size();

    const json& blocks = require(doc, "blocks", layout.key("blocks"), "blocks");
    if (!blocks.is_array())
        throw ParseError("expected an array", layout.key("blocks"), "blocks");
    for (std::size_t q = 0; q < blocks.size(); ++q) {
        const std::size_t line = layout.element("blocks", q);
        const std::string field = "blocks[" + std::to_string(q) + "]";
        const json& b = blocks[q];
        if (!b.is_object())
            throw ParseError("expected an object", line, field);
        Block blk;
        if (auto it = b.find("x"); it != b.end())
            blk.x_cols = read_index_list(*it, n, line, field + ".x");
        if (auto it = b.find("y"); it != b.end())
            blk.y_cols = read_index_list(*it, l, line, field + ".y");
        if (auto it = b.find("rows"); it != b.end())
            blk.rows = read_index_list(*it, num_rows, line, field + ".rows");
        m.blocks.push_back(std::move(blk));
    }

    const std::size_t link_line = layout.key("linking_rows");
    if (auto it = doc.find("linking_rows"); it != doc.end())
        m.linking_rows = read_index_list(*it, num_rows, link_line, "linking_rows");

    const std::size_t int_line = layout.key("integrality");
    if (auto it = doc.find("integrality"); it != doc.end()) {
        if (!it->is_object())
            throw ParseError("expected an object", int_line, "integrality");
        if (auto y = it->find("y"); y != it->end() && !(y->is_string() && y->get<std::string>() == "all"))
            throw ParseError("integrality.y must be \"all\"", int_line, "integrality.y");
        if (auto x = it->find("x"); x != it->end())
            m.integer_x = read_index_list(*x, n, int_line, "integrality.x");
    }

    if (auto it = doc.find("delta"); it != doc.end())
        m.delta = to_integer(*it, "delta", layout.key("delta"), "delta");

    if (auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object())
            throw ParseError("expected an object", layout.key("meta"), "meta");
        m.meta = *it;
    }

    m.validate();
    return m;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write file '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

DecomposedMip load(const std::filesystem::path& path) { return from_text(read_file(path)); }

void store(const DecomposedMip& m, const std::filesystem::path& path) {
    m.validate();
    write_file(path, to_text(m));
}

RatMatrix matrix_from_text(const std::string& text) {
    const json doc = parse_json(text);
    if (doc.is_object() && doc.contains("format"))
        return from_text(text).A;
    const Layout layout = scan_layout(text);
    if (!doc.is_object())
        throw ParseError("top level must be an object", 1);
    const std::size_t cols = to_index(require(doc, "cols", layout.key("cols"), "cols"),
                                      std::numeric_limits<std::uint32_t>::max(), layout.key("cols"), "cols");
    const json& rows = require(doc, "rows", layout.key("rows"), "rows");
    if (!rows.is_array())
        throw ParseError("expected an array", layout.key("rows"), "rows");
    RatMatrix a(0, cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        RatVector r(cols);
        read_sparse(rows[i], r, "matrix", layout.element("rows", i), "rows[" + std::to_string(i) + "]");
        a.append_row(r);
    }
    return a;
}

RatMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_text(read_file(path)); }

std::string matrix_to_text(const RatMatrix& a) {
    if (!a.is_integral())
        throw DomainError("matrix must be integral");
    std::ostringstream os;
    os << "{\n  \"cols\": " << a.cols() << ",\n  \"rows\": [";
    for (std::size_t i = 0; i < a.rows(); ++i)
        os << (i ? ",\n" : "\n") << "    " << sparse_text(a.row(i));
    os << (a.rows() ? "\n  ]\n}\n" : "]\n}\n");
    return os.str();
}

}  // namespace deltadb
