#include "enet/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "enet/error.hpp"

namespace enet {

namespace {

using nlohmann::json;

struct RawEdge {
    Label x;
    Label y;
    double c;
};

Network assemble(const std::vector<RawEdge>& raw, std::optional<Label> base_label) {
    std::vector<Label> labels;
    labels.reserve(raw.size() * 2);
    for (const auto& e : raw) {
        labels.push_back(e.x);
        labels.push_back(e.y);
    }
    if (base_label) {
        labels.push_back(*base_label);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty()) {
        throw ValidationError("network file contains no edges");
    }

    auto index = [&](Label l) {
        return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
        edges.push_back({index(e.x), index(e.y), e.c});
    }
    const VertexId base = base_label ? index(*base_label) : 0;
    const std::size_t n = labels.size();
    return Network::build(n, std::move(edges), base, std::move(labels));
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    if (!token.empty() && token.front() == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

json network_json(const Network& net) {
    json edges = json::array();
    for (const auto& e : net.edges()) {
        edges.push_back(json::array({net.label(e.x), net.label(e.y), e.c}));
    }
    return json{{"base", net.label(net.base_point())}, {"edges", std::move(edges)}};
}

Network network_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
        throw ValidationError("network JSON needs an \"edges\" array");
    }
    std::vector<RawEdge> raw;
    for (const auto& item : doc["edges"]) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() || !item[1].is_number_integer() ||
            !item[2].is_number()) {
            throw ValidationError("malformed edge entry " + item.dump() + " (expected [x, y, c])");
        }
        raw.push_back({item[0].get<Label>(), item[1].get<Label>(), item[2].get<double>()});
    }
    std::optional<Label> base;
    if (doc.contains("base")) {
        if (!doc["base"].is_number_integer()) {
            throw ValidationError("\"base\" must be an integer vertex label");
        }
        base = doc["base"].get<Label>();
    }
    return assemble(raw, base);
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace

NetworkFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".json" ? NetworkFormat::Json : NetworkFormat::EdgeList;
}

Network parse_edge_list(std::string_view text) {
    std::vector<RawEdge> raw;
    std::optional<Label> base;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto tokens = split_ws(line);
        auto fail = [&](const std::string& why) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + why + ": '" + std::string(line) + "'");
        };
        if (tokens[0] == "base") {
            Label b = 0;
            if (tokens.size() != 2 || !parse_number(tokens[1], b)) {
                fail("malformed base line");
            }
            if (base) {
                fail("duplicate base line");
            }
            base = b;
            continue;
        }
        RawEdge e{};
        if (tokens.size() != 3 || !parse_number(tokens[0], e.x) || !parse_number(tokens[1], e.y) ||
            !parse_number(tokens[2], e.c)) {
            fail("expected 'x y c'");
        }
        raw.push_back(e);
    }
    return assemble(raw, base);
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_edge_list(const Network& net) {
    std::string out = "base " + std::to_string(net.label(net.base_point())) + "\n";
    for (const auto& e : net.edges()) {
        out += std::to_string(net.label(e.x));
        out += ' ';
        out += std::to_string(net.label(e.y));
        out += ' ';
        out += format_double(e.c);
        out += '\n';
    }
    return out;
}

Network parse_network_json(std::string_view text) { return network_from_json(parse_json_text(text)); }

std::string format_network_json(const Network& net) { return network_json(net).dump() + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading '" + path.string() + "'");
    }
    return ss.str();
}

Network load_network(const std::filesystem::path& path, NetworkFormat format) {
    const std::string text = read_text_file(path);
    return format == NetworkFormat::Json ? parse_network_json(text) : parse_edge_list(text);
}

Network load_network(const std::filesystem::path& path) { return load_network(path, format_for_path(path)); }

void save_network(const Network& net, const std::filesystem::path& path, NetworkFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << (format == NetworkFormat::Json ? format_network_json(net) : format_edge_list(net));
    if (!out) {
        throw IoError("error writing '" + path.string() + "'");
    }
}

std::pair<Network, Network> parse_pair_json(std::string_view text) {
    const json doc = parse_json_text(text);
    if (!doc.is_object() || !doc.contains("base") || !doc.contains("upper")) {
        throw ValidationError("pair JSON needs \"base\" and \"upper\" networks");
    }
    return {network_from_json(doc["base"]), network_from_json(doc["upper"])};
}

std::pair<Network, Network> load_pair(const std::filesystem::path& path) {
    return parse_pair_json(read_text_file(path));
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
    std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
    for (Eigen::Index k = 0; k < matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
            if (it.row() >= it.col() && it.value() != 0.0) {
                entries.emplace_back(it.row(), it.col(), it.value());
            }
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::pair(std::get<1>(a), std::get<0>(a)) < std::pair(std::get<1>(b), std::get<0>(b));
    });
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << entries.size() << '\n';
    for (const auto& [r, c, v] : entries) {
        out << r + 1 << ' ' << c + 1 << ' ' << format_double(v) << '\n';
    }
}

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0) {
        throw ValidationError("missing Matrix Market banner");
    }
    const bool symmetric = line.find("symmetric") != std::string::npos;
    if (line.find("coordinate") == std::string::npos) {
        throw ValidationError("only coordinate Matrix Market files are supported");
    }
    while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
    }
    std::istringstream header(line);
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::size_t nnz = 0;
    if (!(header >> rows >> cols >> nnz)) {
        throw ValidationError("malformed Matrix Market size line");
    }
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t k = 0; k < nnz; ++k) {
        Eigen::Index r = 0;
        Eigen::Index c = 0;
        double v = 0.0;
        if (!(in >> r >> c >> v) || r < 1 || c < 1 || r > rows || c > cols) {
            throw ValidationError("malformed Matrix Market entry " + std::to_string(k + 1));
        }
        triplets.emplace_back(r - 1, c - 1, v);
        if (symmetric && r != c) {
            triplets.emplace_back(c - 1, r - 1, v);
        }
    }
    SparseMatrix m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

void write_dense_csv(std::ostream& out, const Matrix& matrix) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(matrix(i, j));
        }
        out << '\n';
    }
}

}  // namespace enet
