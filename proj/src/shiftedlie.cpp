#include "slk/shiftedlie.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "slk/error.hpp"

namespace slk {

// ------------------------------------------------------------------ GradedVS

GradedVS::GradedVS(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.name.empty()) throw UsageError("generator names must be nonempty");
        if (!names.insert(g.name).second) throw UsageError("duplicate generator name \"" + g.name + "\"");
    }
    if (gens_.size() > 200) throw UsageError("too many generators");
}

GradedVS GradedVS::parse(const std::string& spec) {
    std::vector<Generator> gens;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
            throw UsageError("generator \"" + item + "\" must look like name:degree");
        int deg = 0;
        try {
            std::size_t used = 0;
            deg = std::stoi(item.substr(colon + 1), &used);
            if (used != item.size() - colon - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw UsageError("generator \"" + item + "\" has a non-integer degree");
        }
        gens.push_back({item.substr(0, colon), deg});
    }
    if (gens.empty() && !spec.empty()) throw UsageError("empty generator list");
    return GradedVS(std::move(gens));
}

// ------------------------------------------------------------------- LieWord

LieWord LieWord::leaf(const GradedVS& m, int gen) {
    if (gen < 0 || static_cast<std::size_t>(gen) >= m.size()) throw UsageError("generator index out of range");
    LieWord w;
    w.gen_ = gen;
    w.degree_ = m[static_cast<std::size_t>(gen)].degree;
    return w;
}

LieWord LieWord::op_leaf(int gen, int degree, std::string label) {
    if (label.empty()) throw UsageError("operation leaves need a label");
    LieWord w;
    w.gen_ = gen;
    w.degree_ = degree;
    w.op_ = std::move(label);
    return w;
}

LieWord LieWord::bracket(const LieWord& a, const LieWord& b) {
    LieWord w;
    w.degree_ = a.degree_ + b.degree_ - 1;
    w.weight_ = a.weight_ + b.weight_;
    w.kids_ = {a, b};
    return w;
}

bool LieWord::has_op() const noexcept {
    if (is_leaf()) return !op_.empty();
    return kids_[0].has_op() || kids_[1].has_op();
}

std::vector<int> LieWord::letters() const {
    if (is_leaf()) return {gen_};
    auto l = kids_[0].letters();
    auto r = kids_[1].letters();
    l.insert(l.end(), r.begin(), r.end());
    return l;
}

std::string LieWord::str(const GradedVS& m) const {
    if (is_leaf()) {
        const std::string name = gen_ >= 0 && static_cast<std::size_t>(gen_) < m.size()
                                     ? m[static_cast<std::size_t>(gen_)].name
                                     : "g" + std::to_string(gen_);
        return op_.empty() ? name : op_ + " " + name;
    }
    return "[" + kids_[0].str(m) + "," + kids_[1].str(m) + "]";
}

bool operator==(const LieWord& a, const LieWord& b) {
    return a.gen_ == b.gen_ && a.degree_ == b.degree_ && a.weight_ == b.weight_ && a.op_ == b.op_ &&
           a.kids_ == b.kids_;
}

bool operator<(const LieWord& a, const LieWord& b) {
    if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
    if (a.is_leaf() != b.is_leaf()) return a.is_leaf();
    if (a.is_leaf()) {
        if (a.gen_ != b.gen_) return a.gen_ < b.gen_;
        if (a.op_ != b.op_) return a.op_ < b.op_;
        return a.degree_ < b.degree_;
    }
    if (!(a.kids_[0] == b.kids_[0])) return a.kids_[0] < b.kids_[0];
    return a.kids_[1] < b.kids_[1];
}

void add_term(LieCombination& c, const LieWord& w, long long coeff, Prime p) {
    const long long pv = p.value();
    long long v = coeff % pv;
    if (v < 0) v += pv;
    if (v == 0) return;
    auto [it, fresh] = c.emplace(w, static_cast<std::uint32_t>(v));
    if (!fresh) {
        it->second = static_cast<std::uint32_t>((it->second + v) % pv);
        if (it->second == 0) c.erase(it);
    }
}

// ------------------------------------------------------- tensor-algebra model

namespace {

using Word = std::vector<std::uint8_t>;  // letter ranks

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using Poly = std::map<Word, long long, WordLess>;

// Letters ranked by (degree, index).
struct Alphabet {
    std::vector<std::uint8_t> rank_of;  // generator index -> rank
    std::vector<int> gen_of;            // rank -> generator index
    std::vector<int> degree_of;         // rank -> degree

    explicit Alphabet(const GradedVS& m) {
        const std::size_t n = m.size();
        gen_of.resize(n);
        for (std::size_t i = 0; i < n; ++i) gen_of[i] = static_cast<int>(i);
        std::stable_sort(gen_of.begin(), gen_of.end(), [&](int a, int b) {
            return m[static_cast<std::size_t>(a)].degree < m[static_cast<std::size_t>(b)].degree;
        });
        rank_of.resize(n);
        degree_of.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            rank_of[static_cast<std::size_t>(gen_of[r])] = static_cast<std::uint8_t>(r);
            degree_of[r] = m[static_cast<std::size_t>(gen_of[r])].degree;
        }
    }

    int degree(const Word& w) const {
        int d = 0;
        for (auto c : w) d += degree_of[c];
        return d - (static_cast<int>(w.size()) - 1);
    }
};

long long modp(long long v, long long p) {
    v %= p;
    return v < 0 ? v + p : v;
}

void add_poly(Poly& into, const Poly& from, long long scale, long long p) {
    for (const auto& [w, c] : from) {
        const long long v = modp(c * scale, p);
        if (v == 0) continue;
        auto [it, fresh] = into.emplace(w, v);
        if (!fresh) {
            it->second = (it->second + v) % p;
            if (it->second == 0) into.erase(it);
        }
    }
}

Poly multiply(const Poly& a, const Poly& b, long long p) {
    Poly out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            add_poly(out, Poly{{std::move(w), 1}}, ca * cb, p);
        }
    return out;
}

bool odd(int v) { return v % 2 != 0; }

Poly phi(const LieWord& x, const Alphabet& alpha, long long p) {
    if (x.is_leaf()) return Poly{{Word{alpha.rank_of[static_cast<std::size_t>(x.gen())]}, 1}};
    const Poly a = phi(x.left(), alpha, p);
    const Poly b = phi(x.right(), alpha, p);
    const bool both_odd = odd(x.left().degree() - 1) && odd(x.right().degree() - 1);
    const long long outer = odd(x.right().degree()) ? -1 : 1;
    Poly out = multiply(a, b, p);
    add_poly(out, multiply(b, a, p), both_odd ? 1 : -1, p);
    Poly scaled;
    add_poly(scaled, out, outer, p);
    return scaled;
}

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end()))
            return false;
    return true;
}

LieWord standard_bracketing(const Word& w, const GradedVS& m, const Alphabet& alpha) {
    if (w.size() == 1) return LieWord::leaf(m, alpha.gen_of[w[0]]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (is_lyndon(v)) {
            Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            return LieWord::bracket(standard_bracketing(u, m, alpha), standard_bracketing(v, m, alpha));
        }
    }
    throw IntegrityError("word has no Lyndon suffix");
}

// Lyndon words of length 1..max_len over ranks 0..k-1, in lexicographic order (Duval).
std::vector<Word> lyndon_words(std::size_t k, int max_len) {
    std::vector<Word> out;
    if (k == 0 || max_len < 1) return out;
    Word w{0};
    while (!w.empty()) {
        out.push_back(w);
        if (out.size() > 2000000) throw UnsupportedError("Lyndon basis exceeds two million words; lower the weight");
        const Word base = w;
        while (static_cast<int>(w.size()) < max_len) w.push_back(base[w.size() % base.size()]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

}  // namespace

LieCombination normalize(const LieCombination& input, const GradedVS& m, Prime p) {
    const long long pv = p.value();
    const Alphabet alpha(m);
    LieCombination out;
    Poly t;
    for (const auto& [w, c] : input) {
        if (w.has_op()) {
            if (w.is_leaf()) add_term(out, w, c, p);
            continue;  // brackets with an operation image vanish
        }
        add_poly(t, phi(w, alpha, pv), c, pv);
    }
    while (!t.empty()) {
        const Word lead = t.begin()->first;
        LieWord b;
        if (is_lyndon(lead)) {
            b = standard_bracketing(lead, m, alpha);
        } else {
            const std::size_t h = lead.size() / 2;
            const Word u(lead.begin(), lead.begin() + static_cast<std::ptrdiff_t>(h));
            if (lead.size() % 2 != 0 || !std::equal(u.begin(), u.end(), lead.begin() + static_cast<std::ptrdiff_t>(h)) ||
                !is_lyndon(u) || odd(alpha.degree(u)))
                throw IntegrityError("combination is not in the span of bracket words");
            const LieWord pu = standard_bracketing(u, m, alpha);
            b = LieWord::bracket(pu, pu);
        }
        const Poly pb = phi(b, alpha, pv);
        const long long lead_coeff = pb.at(lead);
        const long long a = t.begin()->second * mod_inverse(static_cast<std::uint32_t>(lead_coeff),
                                                            static_cast<std::uint32_t>(pv)) % pv;
        add_term(out, b, a, p);
        add_poly(t, pb, pv - a, pv);
    }
    return out;
}

LieCombination normalize(const LieWord& w, const GradedVS& m, Prime p) {
    LieCombination c;
    add_term(c, w, 1, p);
    return normalize(c, m, p);
}

std::vector<LieBasisWord> lie_basis(const GradedVS& m, int max_weight, Prime) {
    if (max_weight < 1) throw UsageError("max_weight must be at least 1");
    const Alphabet alpha(m);
    std::vector<std::pair<Word, LieBasisWord>> tagged;
    for (const auto& w : lyndon_words(m.size(), max_weight)) {
        const int d = alpha.degree(w);
        tagged.push_back({w, {standard_bracketing(w, m, alpha), static_cast<int>(w.size()), d}});
        if (2 * static_cast<int>(w.size()) <= max_weight && !odd(d)) {
            const LieWord pw = standard_bracketing(w, m, alpha);
            Word ww = w;
            ww.insert(ww.end(), w.begin(), w.end());
            tagged.push_back({ww, {LieWord::bracket(pw, pw), 2 * static_cast<int>(w.size()), 2 * d - 1}});
        }
    }
    std::sort(tagged.begin(), tagged.end(), [](auto& a, auto& b) { return WordLess{}(a.first, b.first); });
    std::vector<LieBasisWord> out;
    for (auto& [w, b] : tagged) out.push_back(std::move(b));
    return out;
}

LieCombination jacobi(const LieWord& x, const LieWord& y, const LieWord& z, Prime p) {
    auto sign = [](int a, int b) { return odd(a) && odd(b) ? -1 : 1; };
    LieCombination c;
    add_term(c, LieWord::bracket(x, LieWord::bracket(y, z)), sign(x.degree(), z.degree()), p);
    add_term(c, LieWord::bracket(y, LieWord::bracket(z, x)), sign(y.degree(), x.degree()), p);
    add_term(c, LieWord::bracket(z, LieWord::bracket(x, y)), sign(z.degree(), y.degree()), p);
    return c;
}

// --------------------------------------------------------------- brute force

namespace {

using Path = std::vector<int>;  // 0 = left, 1 = right

void collect_nodes(const LieWord& w, Path& here, std::vector<Path>& out) {
    if (w.is_leaf()) return;
    out.push_back(here);
    here.push_back(0);
    collect_nodes(w.left(), here, out);
    here.back() = 1;
    collect_nodes(w.right(), here, out);
    here.pop_back();
}

const LieWord& at(const LieWord& w, const Path& path, std::size_t i = 0) {
    if (i == path.size()) return w;
    return at(path[i] == 0 ? w.left() : w.right(), path, i + 1);
}

LieWord replace(const LieWord& w, const Path& path, const LieWord& with, std::size_t i = 0) {
    if (i == path.size()) return with;
    if (path[i] == 0) return LieWord::bracket(replace(w.left(), path, with, i + 1), w.right());
    return LieWord::bracket(w.left(), replace(w.right(), path, with, i + 1));
}

// All bracket words whose leaves use generator i exactly counts[i] times.
std::vector<LieWord> words_with_content(const GradedVS& m, const std::vector<int>& counts,
                                        std::map<std::vector<int>, std::vector<LieWord>>& memo) {
    if (auto it = memo.find(counts); it != memo.end()) return it->second;
    int total = 0;
    for (int c : counts) total += c;
    std::vector<LieWord> out;
    if (total == 1) {
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] == 1) out.push_back(LieWord::leaf(m, static_cast<int>(i)));
    } else {
        // Enumerate left sub-multisets.
        std::vector<int> left(counts.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == counts.size()) {
                int lt = 0;
                for (int c : left) lt += c;
                if (lt == 0 || lt == total) return;
                std::vector<int> right(counts.size());
                for (std::size_t k = 0; k < counts.size(); ++k) right[k] = counts[k] - left[k];
                const auto ls = words_with_content(m, left, memo);
                const auto rs = words_with_content(m, right, memo);
                for (const auto& a : ls)
                    for (const auto& b : rs) out.push_back(LieWord::bracket(a, b));
                return;
            }
            for (int c = 0; c <= counts[i]; ++c) {
                left[i] = c;
                rec(i + 1);
            }
            left[i] = 0;
        };
        rec(0);
    }
    memo[counts] = out;
    return out;
}

std::size_t content_rank(const GradedVS& m, const std::vector<int>& counts, Prime p) {
    std::map<std::vector<int>, std::vector<LieWord>> memo;
    const auto words = words_with_content(m, counts, memo);
    std::map<LieWord, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
    std::vector<std::vector<std::pair<std::size_t, long long>>> relations;
    auto sgn = [](int a, int b) { return odd(a) && odd(b) ? -1LL : 1LL; };
    for (const auto& w : words) {
        std::vector<Path> nodes;
        Path here;
        collect_nodes(w, here, nodes);
        for (const auto& path : nodes) {
            const LieWord& s = at(w, path);
            const LieWord& a = s.left();
            const LieWord& b = s.right();
            // [a,b] - (-1)^{|a||b|} [b,a]
            relations.push_back({{index.at(w), 1},
                                 {index.at(replace(w, path, LieWord::bracket(b, a))), -sgn(a.degree(), b.degree())}});
            if (!b.is_leaf()) {
                const LieWord& x = a;
                const LieWord& y = b.left();
                const LieWord& z = b.right();
                relations.push_back(
                    {{index.at(w), sgn(x.degree(), z.degree())},
                     {index.at(replace(w, path, LieWord::bracket(y, LieWord::bracket(z, x)))), sgn(y.degree(), x.degree())},
                     {index.at(replace(w, path, LieWord::bracket(z, LieWord::bracket(x, y)))), sgn(z.degree(), y.degree())}});
                if (p.value() == 3 && x == y && y == z) relations.push_back({{index.at(w), 1}});
            }
        }
    }
    SparseMatrix rel(words.size(), relations.size(), p);
    for (std::size_t c = 0; c < relations.size(); ++c)
        for (auto [r, v] : relations[c]) rel.add(r, c, v);
    return words.size() - rank(rel);
}

int content_degree(const GradedVS& m, const std::vector<int>& counts) {
    int d = 0, w = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        d += counts[i] * m[i].degree;
        w += counts[i];
    }
    return d - (w - 1);
}

}  // namespace

std::map<int, std::size_t> brute_force_dims(const GradedVS& m, int weight, Prime p) {
    if (weight < 1) throw UsageError("weight must be at least 1");
    if (weight > kBruteForceMaxWeight)
        throw UnsupportedError("brute-force relation ranks are limited to weight <= " +
                               std::to_string(kBruteForceMaxWeight));
    std::map<int, std::size_t> out;
    std::vector<int> counts(m.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == m.size()) {
            if (left != 0) return;
            const std::size_t r = content_rank(m, counts, p);
            if (r > 0) out[content_degree(m, counts)] += r;
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c);
        }
        counts[i] = 0;
    };
    rec(0, weight);
    return out;
}

std::size_t brute_force_multilinear(const GradedVS& m, Prime p) {
    if (m.size() < 1) throw UsageError("need at least one generator");
    if (static_cast<int>(m.size()) > kBruteForceMaxWeight)
        throw UnsupportedError("brute-force relation ranks are limited to weight <= " +
                               std::to_string(kBruteForceMaxWeight));
    return content_rank(m, std::vector<int>(m.size(), 1), p);
}

}  // namespace slk
