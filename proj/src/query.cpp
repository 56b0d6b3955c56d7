#include "slk/query.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "slk/arboreal.hpp"
#include "slk/ehp.hpp"
#include "slk/error.hpp"
#include "slk/forest.hpp"
#include "slk/grouphom.hpp"
#include "slk/layers.hpp"
#include "slk/opbasis.hpp"
#include "slk/shiftedlie.hpp"

namespace slk {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kDefaultMaxDegree = 40;

// Trees for n above this are never written to disk.
constexpr int kCacheMaxLeaves = kDefaultComplexBound;

fs::path cache_file(const std::string& dir, int n) { return fs::path(dir) / ("trees-n" + std::to_string(n) + ".slk"); }

std::optional<std::vector<Tree>> read_cache(const fs::path& file, int n) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != kCacheHeaderPrefix + std::to_string(n)) return std::nullopt;
    std::vector<Tree> trees;
    bool closed = false;
    while (std::getline(in, line)) {
        if (line.rfind("END ", 0) == 0) {
            try {
                closed = std::stoull(line.substr(4)) == trees.size();
            } catch (const std::exception&) {
                return std::nullopt;
            }
            break;
        }
        try {
            Tree t = Tree::parse(line);
            if (t.leaves() != n) return std::nullopt;
            trees.push_back(std::move(t));
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    if (!closed) return std::nullopt;
    std::sort(trees.begin(), trees.end());
    return trees;
}

void write_cache(const fs::path& file, int n, const std::vector<Tree>& trees) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;  // the cache only accelerates; an unwritable directory is not an error
        out << kCacheHeaderPrefix << n << '\n';
        for (int k = 1; k <= std::max(1, n - 1); ++k)
            for (const auto& t : trees)
                if (t.internal_vertices() == k || (n == 1 && k == 1)) out << t.str() << '\n';
        out << "END " << trees.size() << '\n';
        if (!out) return;
    }
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
}

void warm(const Query& q, int n) {
    if (!q.cache_dir.empty() && n >= 1 && n <= kCacheMaxLeaves) warm_tree_cache(q.cache_dir, n);
}

// ----------------------------------------------------------------- rendering

struct Doc {
    std::string object;
    std::string policy;
    GradedDims dims;
    Json extra = Json::object();
    std::vector<std::string> text_extra;  // extra lines for the text format
};

Json dims_json(const GradedDims& g) {
    Json d = Json::object();
    for (const auto& [deg, r] : g.dims) d[std::to_string(deg)] = r;
    return d;
}

Json labels_json(const GradedDims& g) {
    Json l = Json::object();
    for (const auto& [deg, ls] : g.labels) l[std::to_string(deg)] = ls;
    return l;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render(const Query& q, const Doc& doc) {
    const GradedDims& g = doc.dims;
    if (q.format == "json") {
        Json j;
        j["prime"] = q.prime;
        j["object"] = doc.object;
        j["policy"] = doc.policy;
        j["dims"] = dims_json(g);
        j["labels"] = labels_json(g);
        j["certified"] = g.certified;
        j["truncated"] = g.truncated;
        for (const auto& [key, value] : doc.extra.items()) j[key] = value;
        return j.dump(2) + "\n";
    }
    if (q.format == "csv") {
        std::ostringstream out;
        out << "prime,object,policy,certified,truncated,degree,rank,label\n";
        const std::string head = std::to_string(q.prime) + "," + csv_field(doc.object) + "," + doc.policy + "," +
                                 (g.certified ? "true" : "false") + "," + (g.truncated ? "true" : "false") + ",";
        for (const auto& [deg, r] : g.dims) {
            auto it = g.labels.find(deg);
            if (it == g.labels.end() || it->second.empty()) {
                out << head << deg << ',' << r << ",\n";
                continue;
            }
            for (const auto& l : it->second) out << head << deg << ',' << r << ',' << csv_field(l) << '\n';
        }
        return out.str();
    }
    std::ostringstream out;
    out << doc.object << "  (p = " << q.prime << ", policy " << doc.policy << ")\n";
    out << "certified: " << (g.certified ? "yes" : "no") << "  truncated: " << (g.truncated ? "yes" : "no") << '\n';
    out << std::setw(8) << "degree" << std::setw(8) << "rank" << "  labels\n";
    for (const auto& [deg, r] : g.dims) {
        out << std::setw(8) << deg << std::setw(8) << r << "  ";
        if (auto it = g.labels.find(deg); it != g.labels.end()) {
            for (std::size_t i = 0; i < it->second.size(); ++i) out << (i ? ", " : "") << it->second[i];
        }
        out << '\n';
    }
    for (const auto& l : doc.text_extra) out << l << '\n';
    return out.str();
}

// ------------------------------------------------------------------ commands

int need(const std::optional<int>& v, const char* flag, const std::string& cmd) {
    if (!v) throw UsageError(cmd + " needs --" + flag);
    return *v;
}

int window_max(const Query& q) { return q.max_degree.value_or(kDefaultMaxDegree); }

GradedDims windowed(const Query& q, GradedDims g) {
    GradedDims w = g.window(q.min_degree.value_or(INT_MIN), window_max(q));
    w.certified = g.certified;
    w.truncated = g.truncated;
    return w;
}

PermGroup group_for(const Query& q, int n) {
    if (q.group.empty()) return PermGroup::symmetric(n);
    PermGroup g = PermGroup::parse(q.group);
    if (g.degree() != n)
        throw UsageError("group " + q.group + " acts on " + std::to_string(g.degree()) + " leaves, not n = " +
                         std::to_string(n));
    return g;
}

Json orbit_rows(const std::vector<OrbitRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["tree"] = r.representative.str();
        row["degree"] = -r.representative.internal_vertices();
        row["stabilizer_order"] = r.stabilizer_order;
        row["orbit_size"] = r.orbit_size;
        out.push_back(row);
    }
    return out;
}

void add_orbit_text(Doc& doc, const std::vector<OrbitRow>& rows) {
    doc.text_extra.push_back("");
    std::ostringstream h;
    h << std::setw(8) << "degree" << std::setw(8) << "stab" << std::setw(8) << "orbit" << "  tree";
    doc.text_extra.push_back(h.str());
    for (const auto& r : rows) {
        std::ostringstream line;
        line << std::setw(8) << -r.representative.internal_vertices() << std::setw(8) << r.stabilizer_order
             << std::setw(8) << r.orbit_size << "  " << r.representative.str();
        doc.text_extra.push_back(line.str());
    }
}

Doc cmd_trees(const Query& q) {
    const int n = need(q.n, "n", "trees");
    warm(q, n);
    Doc doc;
    doc.policy = q.policy;
    std::vector<int> ks;
    if (q.k) {
        ks.push_back(*q.k);
    } else {
        for (int k = 1; k <= std::max(1, n - 1); ++k) ks.push_back(k);
    }
    if (!q.group.empty()) {
        const PermGroup g = group_for(q, n);
        std::vector<OrbitRow> rows;
        for (int k : ks) {
            auto part = orbit_census(n, k, g);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        for (const auto& r : rows) doc.dims.add_labelled(-r.representative.internal_vertices(), r.representative.str());
        doc.object = "orbits of trees n=" + std::to_string(n) + (q.k ? " k=" + std::to_string(*q.k) : "") +
                     " under " + q.group;
        doc.extra["orbits"] = orbit_rows(rows);
        add_orbit_text(doc, rows);
        return doc;
    }
    for (int k : ks)
        for (const auto& t : enumerate_trees(n, k)) doc.dims.add_labelled(-k, t.str());
    doc.object = "trees n=" + std::to_string(n) + (q.k ? " k=" + std::to_string(*q.k) : "");
    return doc;
}

Doc cmd_census(const Query& q) {
    const int n = need(q.n, "n", "census");
    warm(q, n);
    const PermGroup g = group_for(q, n);
    const std::string gname = q.group.empty() ? "sigma" + std::to_string(n) : q.group;
    Doc doc;
    doc.policy = q.policy;
    std::vector<OrbitRow> rows;
    for (int k = 1; k <= std::max(1, n - 1); ++k) {
        if (q.k && *q.k != k) continue;
        auto part = orbit_census(n, k, g);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    for (const auto& r : rows) doc.dims.add_labelled(-r.representative.internal_vertices(), r.representative.str());
    doc.object = "census n=" + std::to_string(n) + " under " + gname;
    doc.extra["group_order"] = g.order();
    doc.extra["orbits"] = orbit_rows(rows);
    add_orbit_text(doc, rows);
    return doc;
}

Doc cmd_complex(const Query& q) {
    const int n = need(q.n, "n", "complex");
    if (n < 1) throw UsageError("complex needs n >= 1");
    warm(q, n);
    const ChainComplex c = build_complex(n, Prime(q.prime));
    Doc doc;
    doc.policy = q.policy;
    doc.object = "homology of the arboreal complex n=" + std::to_string(n);
    doc.dims = homology(c);
    Json cells = Json::object();
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        const int deg = -static_cast<int>(i) - 1;
        cells[std::to_string(deg)] = c.labels(deg);
    }
    Json diffs = Json::array();
    for (std::size_t i = 0; i < c.differential.size(); ++i) {
        const SparseMatrix& d = c.differential[i];
        Json block;
        block["from"] = -static_cast<int>(i) - 1;
        block["to"] = -static_cast<int>(i) - 2;
        block["rows"] = d.rows();
        block["cols"] = d.cols();
        Json triplets = Json::array();
        for (std::size_t col = 0; col < d.cols(); ++col)
            for (const auto& [row, v] : d.column(col)) triplets.push_back({row, col, v});
        block["entries"] = triplets;
        diffs.push_back(block);
    }
    doc.extra["complex"] = {{"cells", cells}, {"differentials", diffs}};
    for (std::size_t i = 0; i < c.cells.size(); ++i)
        doc.text_extra.push_back("cells in degree " + std::to_string(-static_cast<int>(i) - 1) + ": " +
                                 std::to_string(c.cells[i].size()));
    return doc;
}

Doc cmd_layer(const Query& q) {
    const int n = need(q.n, "n", "layer");
    const int j = need(q.sphere, "sphere", "layer");
    if (n <= kCacheMaxLeaves) warm(q, n);
    Doc doc;
    doc.policy = q.policy;
    doc.object = "D_" + std::to_string(n) + "(S^" + std::to_string(j) + ")";
    doc.dims = windowed(q, layer_dims(n, j, Prime(q.prime), window_max(q)));
    return doc;
}

Doc cmd_basis(const Query& q) {
    const Prime p(q.prime);
    const ExcessPolicy policy = parse_policy(q.policy);
    Doc doc;
    doc.policy = q.policy;
    if (!q.gens.empty()) {
        const GradedVS m = GradedVS::parse(q.gens);
        SlpOptions opt;
        if (q.min_degree) opt.min_degree = *q.min_degree;
        const SlpBasis b = slp_basis(m, window_max(q), p, policy, opt);
        for (const auto& e : b.elements) {
            if (q.n && e.weight != *q.n) continue;
            doc.dims.add_labelled(e.degree, e.label);
        }
        doc.dims.truncated = b.truncated;
        doc.object = "basis of sL_P(" + q.gens + ")" + (q.n ? " weight " + std::to_string(*q.n) : "");
        return doc;
    }
    const int n = need(q.n, "n", "basis");
    const int j = need(q.sphere, "sphere", "basis");
    doc.object = "basis of D_" + std::to_string(n) + "(S^" + std::to_string(j) + ")";
    doc.dims = windowed(q, layer_basis_sphere(n, j, p, policy, window_max(q), q.min_degree.value_or(INT_MIN)));
    return doc;
}

Doc cmd_poincare(const Query& q) {
    if (q.gens.empty()) throw UsageError("poincare needs --gens");
    const GradedVS m = GradedVS::parse(q.gens);
    SlpOptions opt;
    if (q.min_degree) opt.min_degree = *q.min_degree;
    Doc doc;
    doc.policy = q.policy;
    doc.object = "poincare series of sL_P(" + q.gens + ")";
    doc.dims = poincare(m, window_max(q), Prime(q.prime), parse_policy(q.policy), opt);
    if (q.n) {
        const auto by_weight = poincare_by_weight(m, window_max(q), Prime(q.prime), parse_policy(q.policy), opt);
        const bool truncated = doc.dims.truncated;
        auto it = by_weight.find(*q.n);
        doc.dims = it == by_weight.end() ? GradedDims{} : it->second;
        doc.dims.truncated = truncated;
        doc.object += " weight " + std::to_string(*q.n);
    }
    return doc;
}

Doc cmd_ehp(const Query& q) {
    const int m = need(q.n, "n", "ehp");
    const int sphere = need(q.sphere, "sphere", "ehp");
    const Prime p(q.prime);
    const ExcessPolicy policy = parse_policy(q.policy);
    const int lo = q.min_degree.value_or(INT_MIN);
    ComparisonReport r;
    if (m % 2 != 0) {
        r = odd_iso_report(m, sphere, p, window_max(q), policy, lo);
    } else {
        if (sphere % 2 != 0) throw UsageError("ehp with even n compares against an even sphere; got --sphere " +
                                              std::to_string(sphere));
        r = even_les_report(m / 2, sphere / 2, p, window_max(q), policy, 2, lo);
    }
    Doc doc;
    doc.policy = q.policy;
    doc.object = r.lhs + " vs " + r.rhs;
    for (const auto& row : r.rows) doc.dims.add(row.degree, row.lhs);
    doc.dims.certified = r.enumerator_agrees.value_or(true);
    Json rep;
    rep["lhs"] = r.lhs;
    rep["rhs"] = r.rhs;
    rep["offset"] = r.offset;
    rep["min_degree"] = r.min_degree;
    rep["max_degree"] = r.max_degree;
    rep["agree"] = r.agree;
    rep["first_discrepancy"] = r.first_discrepancy ? Json(*r.first_discrepancy) : Json(nullptr);
    rep["enumerator_agrees"] = r.enumerator_agrees ? Json(*r.enumerator_agrees) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back({row.degree, row.lhs, row.rhs, row.agree});
    rep["rows"] = rows;
    doc.extra["report"] = rep;

    doc.text_extra.push_back("");
    doc.text_extra.push_back("rhs read at degree + (" + std::to_string(r.offset) + ")");
    std::ostringstream h;
    h << std::setw(8) << "degree" << std::setw(6) << "lhs" << std::setw(6) << "rhs" << "  agree";
    doc.text_extra.push_back(h.str());
    for (const auto& row : r.rows) {
        std::ostringstream line;
        line << std::setw(8) << row.degree << std::setw(6) << row.lhs << std::setw(6) << row.rhs << "  "
             << (row.agree ? "yes" : "NO");
        doc.text_extra.push_back(line.str());
    }
    doc.text_extra.push_back(r.agree ? "agree in every degree"
                                     : "first discrepancy at degree " + std::to_string(*r.first_discrepancy));
    return doc;
}

void validate(const Query& q) {
    if (!is_odd_prime(q.prime)) throw UsageError("--prime must be an odd prime, got " + std::to_string(q.prime));
    if (q.format != "json" && q.format != "csv" && q.format != "text")
        throw UsageError("--format must be json, csv or text, got \"" + q.format + "\"");
    parse_policy(q.policy);
    if (q.min_degree && q.max_degree && *q.min_degree > *q.max_degree)
        throw UsageError("empty degree window: min " + std::to_string(*q.min_degree) + " > max " +
                         std::to_string(*q.max_degree));
    if (q.n && *q.n < 1) throw UsageError("--n must be positive");
    if (q.k && *q.k < 1) throw UsageError("--k must be positive");
}

}  // namespace

bool warm_tree_cache(const std::string& cache_dir, int n) {
    if (cache_dir.empty()) throw UsageError("empty cache directory");
    if (n < 1 || n > kCacheMaxLeaves)
        throw UnsupportedError("the tree cache holds 1 <= n <= " + std::to_string(kCacheMaxLeaves));
    const fs::path file = cache_file(cache_dir, n);
    if (auto trees = read_cache(file, n)) {
        try {
            install_trees(n, std::move(*trees));
            return true;
        } catch (const IntegrityError&) {
            // fall through to recomputation
        }
    }
    write_cache(file, n, enumerate_all_trees(n));
    return false;
}

QueryResult run_query(const Query& q) {
    validate(q);
    Doc doc;
    if (q.command == "trees") {
        doc = cmd_trees(q);
    } else if (q.command == "census") {
        doc = cmd_census(q);
    } else if (q.command == "complex") {
        doc = cmd_complex(q);
    } else if (q.command == "layer") {
        doc = cmd_layer(q);
    } else if (q.command == "basis") {
        doc = cmd_basis(q);
    } else if (q.command == "poincare") {
        doc = cmd_poincare(q);
    } else if (q.command == "ehp") {
        doc = cmd_ehp(q);
    } else {
        throw UsageError("unknown command \"" + q.command +
                         "\" (expected trees, complex, layer, basis, poincare, ehp or census)");
    }
    doc.dims.check();
    QueryResult out;
    out.object = doc.object;
    out.document = render(q, doc);
    out.dims = std::move(doc.dims);
    return out;
}

}  // namespace slk
