#include "qwr/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qwr/error.hpp"

namespace qwr {

namespace {

nlohmann::json rows_to_json(const SparseBitMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<std::size_t>(row.begin(), row.end()));
    }
    return rows;
}

SparseBitMatrix rows_from_json(const nlohmann::json &j, const char *key, std::size_t n) {
    if (!j.contains(key)) return SparseBitMatrix(0, n);
    const auto &rows = j.at(key);
    if (!rows.is_array()) throw DomainError(errors::kParseError, std::string("code JSON: ") + key + " must be an array");
    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (!row.is_array()) {
            throw DomainError(errors::kParseError, "code JSON: each row must be an array of qubit indices",
                              {{"matrix", key}, {"row", r}});
        }
        std::vector<std::size_t> support;
        for (const auto &c : row) {
            if (!c.is_number_unsigned()) {
                throw DomainError(errors::kParseError, "code JSON: qubit indices must be non-negative integers",
                                  {{"matrix", key}, {"row", r}});
            }
            support.push_back(c.get<std::size_t>());
        }
        supports.push_back(std::move(support));
    }
    const std::size_t count = supports.size();
    return SparseBitMatrix(count, n, std::move(supports));
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError(errors::kParseError, "cannot open file", {{"path", path}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError(errors::kInvalidArgument, "cannot write file", {{"path", path}});
    out << text;
    if (!out) throw DomainError(errors::kInvalidArgument, "write failed", {{"path", path}});
}

// Next non-blank line as integers.
std::vector<long long> next_line(std::istream &in, const char *what) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        std::vector<long long> out;
        long long v = 0;
        while (fields >> v) {
            if (v < 0) break;
            out.push_back(v);
        }
        if (!fields.eof()) throw DomainError(errors::kParseError, std::string("alist: malformed ") + what);
        return out;
    }
    throw DomainError(errors::kParseError, std::string("alist: missing ") + what);
}

std::vector<std::size_t> counts(std::istream &in, const char *what, std::size_t expected) {
    if (expected == 0) return {};
    const auto line = next_line(in, what);
    if (line.size() != expected) {
        throw DomainError(errors::kParseError, std::string("alist: wrong number of entries in ") + what,
                          {{"expected", expected}, {"found", line.size()}});
    }
    return {line.begin(), line.end()};
}

// One adjacency line: 1-based indices with zero padding, `weight` of them
// nonzero.
std::vector<std::size_t> adjacency(std::istream &in, const char *what, std::size_t weight, std::size_t max_weight,
                                   std::size_t bound) {
    std::vector<std::size_t> out;
    if (max_weight == 0) return out;
    for (auto v : next_line(in, what)) {
        if (v == 0) continue;
        if (static_cast<std::size_t>(v) > bound) {
            throw DomainError(errors::kIndexOutOfRange, std::string("alist: index out of range in ") + what,
                              {{"index", v}, {"bound", bound}});
        }
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    if (out.size() != weight) {
        throw DomainError(errors::kParseError, std::string("alist: weight mismatch in ") + what,
                          {{"declared", weight}, {"found", out.size()}});
    }
    return out;
}

}  // namespace

nlohmann::json code_to_json(const CssCode &code) {
    return {{"n", code.n()}, {"hx", rows_to_json(code.hx())}, {"hz", rows_to_json(code.hz())}, {"meta", code.meta()}};
}

CssCode code_from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw DomainError(errors::kParseError, "code JSON must be an object");
    if (!j.contains("n") || !j.at("n").is_number_unsigned()) {
        throw DomainError(errors::kParseError, "code JSON: \"n\" must be a non-negative integer");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "n" && key != "hx" && key != "hz" && key != "meta") {
            throw DomainError(errors::kParseError, "code JSON: unknown key", {{"key", key}});
        }
    }
    const auto n = j.at("n").get<std::size_t>();
    nlohmann::json meta = j.value("meta", nlohmann::json::object());
    if (!meta.is_object()) throw DomainError(errors::kParseError, "code JSON: \"meta\" must be an object");
    return CssCode(n, rows_from_json(j, "hx", n), rows_from_json(j, "hz", n), std::move(meta));
}

SparseBitMatrix read_alist(std::istream &in) {
    const auto dims = counts(in, "header", 2);
    const auto n = dims[0];
    const auto m = dims[1];
    const auto max_weight = counts(in, "maximum weights", 2);
    const auto col_weight = counts(in, "column weights", n);
    const auto row_weight = counts(in, "row weights", m);
    std::vector<std::vector<std::size_t>> cols(n);
    for (std::size_t c = 0; c < n; ++c) cols[c] = adjacency(in, "column list", col_weight[c], max_weight[0], m);
    std::vector<std::vector<std::size_t>> rows(m);
    for (std::size_t r = 0; r < m; ++r) rows[r] = adjacency(in, "row list", row_weight[r], max_weight[1], n);
    SparseBitMatrix h(m, n, std::move(rows));
    auto transposed = h.column_supports();
    for (std::size_t c = 0; c < n; ++c) {
        std::sort(cols[c].begin(), cols[c].end());
        if (cols[c] != transposed[c]) {
            throw DomainError(errors::kParseError, "alist: column lists disagree with row lists", {{"bit", c}});
        }
    }
    return h;
}

std::string write_alist(const SparseBitMatrix &h) {
    const auto cols = h.column_supports();
    std::size_t max_col = 0;
    std::size_t max_row = 0;
    for (const auto &c : cols) max_col = std::max(max_col, c.size());
    for (std::size_t r = 0; r < h.rows(); ++r) max_row = std::max(max_row, h.row(r).size());
    std::ostringstream out;
    out << h.cols() << ' ' << h.rows() << '\n' << max_col << ' ' << max_row << '\n';
    // Lists are zero-padded to the maximum weight.
    auto list = [&](auto begin, auto end, std::size_t width) {
        if (width == 0) return;
        std::size_t written = 0;
        for (auto it = begin; it != end; ++it, ++written) out << (written ? " " : "") << *it + 1;
        for (; written < width; ++written) out << (written ? " " : "") << 0;
        out << '\n';
    };
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? " " : "") << cols[c].size();
    out << '\n';
    for (std::size_t r = 0; r < h.rows(); ++r) out << (r ? " " : "") << h.row(r).size();
    out << '\n';
    for (const auto &c : cols) list(c.begin(), c.end(), max_col);
    for (std::size_t r = 0; r < h.rows(); ++r) list(h.row(r).begin(), h.row(r).end(), max_row);
    return out.str();
}

CssCode read_code_file(const std::string &path) {
    const auto text = slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] != '{') {
        std::istringstream in(text);
        auto h = read_alist(in);
        const auto n = h.cols();
        return CssCode(n, std::move(h), SparseBitMatrix(0, n), {{"family", "alist"}});
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw DomainError(errors::kParseError, "invalid JSON", {{"path", path}, {"reason", e.what()}});
    }
    return code_from_json(j);
}

void write_code_file(const std::string &path, const CssCode &code) { write_json_file(path, code_to_json(code)); }

nlohmann::json read_json_file(const std::string &path) {
    try {
        return nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw DomainError(errors::kParseError, "invalid JSON", {{"path", path}, {"reason", e.what()}});
    }
}

std::string dump_json(const nlohmann::json &j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string &path, const nlohmann::json &j) { spill(path, dump_json(j)); }

}  // namespace qwr
