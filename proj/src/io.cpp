#include "fsgl/io.hpp"

#include "fsgl/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace fsgl::io {
namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
    return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

long parse_index(const std::string& s, std::size_t line_no) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DataError("line " + std::to_string(line_no) + ": bad index '" + s + "'");
    return v;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out.precision(17);
    return out;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
    const auto old = os.precision(17);
    os << "m,n,w\n";
    for (const auto& [e, w] : g.edges()) os << e.m << ',' << e.n << ',' << w << '\n';
    os.precision(old);
}

void write_edge_list(const std::string& path, const WeightedGraph& g) {
    auto out = open_out(path);
    write_edge_list(out, g);
}

WeightedGraph read_edge_list(std::istream& is, int min_nodes) {
    std::string line;
    std::size_t line_no = 0;
    struct Row { long m, n; double w; };
    std::vector<Row> rows;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (split(line, ',') != std::vector<std::string>{"m", "n", "w"})
                throw DataError("edge list must start with header 'm,n,w'");
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 3) throw DataError("line " + std::to_string(line_no) + ": expected 3 fields");
        Row r{parse_index(cells[0], line_no), parse_index(cells[1], line_no), parse_double(cells[2], line_no)};
        if (r.m < 0 || r.n < 0 || r.m == r.n)
            throw DataError("line " + std::to_string(line_no) + ": invalid node pair");
        if (r.w < 0.0) throw DataError("line " + std::to_string(line_no) + ": negative weight");
        rows.push_back(r);
    }
    if (!header_seen) throw DataError("empty edge list");
    long n = min_nodes;
    for (const auto& r : rows) n = std::max({n, r.m + 1, r.n + 1});
    WeightedGraph g(static_cast<int>(n));
    for (const auto& r : rows) g.set_weight({static_cast<int>(r.m), static_cast<int>(r.n)}, r.w);
    return g;
}

WeightedGraph read_edge_list(const std::string& path, int min_nodes) {
    auto in = open_in(path);
    return read_edge_list(in, min_nodes);
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
    const auto old = os.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
        os << '\n';
    }
    os.precision(old);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    auto out = open_out(path);
    write_matrix_csv(out, m);
}

Eigen::MatrixXd read_matrix_csv(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError("line " + std::to_string(line_no) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) throw DataError("empty matrix");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

Eigen::MatrixXd read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DataError("empty Matrix Market file");
    std::string banner, object, format, field, symmetry;
    {
        std::istringstream hs(line);
        hs >> banner >> object >> format >> field >> symmetry;
        for (auto* s : {&object, &format, &field, &symmetry})
            std::transform(s->begin(), s->end(), s->begin(), [](unsigned char c) { return std::tolower(c); });
    }
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw DataError("missing %%MatrixMarket matrix banner");
    if (format != "coordinate" && format != "array") throw DataError("unsupported Matrix Market format");
    if (field != "real" && field != "integer" && field != "double")
        throw DataError("unsupported Matrix Market field '" + field + "'");
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general") throw DataError("unsupported symmetry '" + symmetry + "'");

    std::size_t line_no = 1;
    auto next_data_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            ++line_no;
            out = trim(out);
            if (!out.empty() && out[0] != '%') return true;
        }
        return false;
    };
    if (!next_data_line(line)) throw DataError("missing Matrix Market size line");
    std::istringstream size_line(line);
    long rows = 0, cols = 0, entries = 0;
    size_line >> rows >> cols;
    if (format == "coordinate") size_line >> entries;
    if (!size_line || rows <= 0 || cols <= 0) throw DataError("bad Matrix Market size line");

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    if (format == "coordinate") {
        for (long k = 0; k < entries; ++k) {
            if (!next_data_line(line)) throw DataError("truncated Matrix Market data");
            std::istringstream es(line);
            long i = 0, j = 0;
            double v = 0.0;
            if (!(es >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols)
                throw DataError("line " + std::to_string(line_no) + ": bad coordinate entry");
            m(i - 1, j - 1) = v;
            if (symmetric) m(j - 1, i - 1) = v;
        }
    } else {
        // Column-major; symmetric stores the lower triangle only.
        for (long j = 0; j < cols; ++j) {
            for (long i = symmetric ? j : 0; i < rows; ++i) {
                if (!next_data_line(line)) throw DataError("truncated Matrix Market data");
                const double v = parse_double(line, line_no);
                m(i, j) = v;
                if (symmetric) m(j, i) = v;
            }
        }
    }
    return m;
}

Eigen::MatrixXd read_matrix(const std::string& path) {
    auto in = open_in(path);
    if (has_suffix(path, ".mtx")) return read_matrix_market(in);
    return read_matrix_csv(in);
}

WeightedGraph read_graph(const std::string& path, int min_nodes) {
    if (has_suffix(path, ".mtx")) {
        auto in = open_in(path);
        const Eigen::MatrixXd w = read_matrix_market(in);
        if (w.rows() < min_nodes) throw DataError("adjacency smaller than expected node count");
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            if (w(i, i) != 0.0) throw DataError("adjacency has a self-loop");
        return WeightedGraph::from_dense(w);
    }
    return read_edge_list(path, min_nodes);
}

} // namespace fsgl::io
