#include "slk/grouphom.hpp"

#include <algorithm>
#include <set>

#include "slk/error.hpp"

namespace slk {

namespace {

void check_multiplicative(const PermGroup& g, const std::map<Perm, int>& values) {
    for (const auto& e : g.elements()) {
        auto ve = values.find(e);
        if (ve == values.end() || (ve->second != 1 && ve->second != -1))
            throw UsageError("character must take the value +1 or -1 on every element");
        for (const auto& gen : g.basis())
            if (values.at(compose(gen, e)) != values.at(gen) * ve->second)
                throw UsageError("character is not multiplicative on " + perm_str(gen) + " * " + perm_str(e));
    }
}

long long pow_mod(long long a, long long e, long long p) {
    long long r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

long long floor_div(long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace

CharacterModule::CharacterModule(PermGroup group, std::map<Perm, int> values)
    : group_(std::move(group)), values_(std::move(values)) {
    check_multiplicative(group_, values_);
}

CharacterModule::CharacterModule(PermGroup group, std::vector<int> gen_values) : group_(std::move(group)) {
    const auto& gens = group_.generators();
    if (gen_values.size() != gens.size()) throw UsageError("one character value per generator is required");
    for (int v : gen_values)
        if (v != 1 && v != -1) throw UsageError("character values must be +1 or -1");
    const Perm id = identity_perm(group_.degree());
    values_[id] = 1;
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& e : frontier)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Perm h = compose(gens[i], e);
                const int v = gen_values[i] * values_[e];
                auto [it, fresh] = values_.emplace(h, v);
                if (fresh)
                    next.push_back(std::move(h));
                else if (it->second != v)
                    throw UsageError("character values on the generators do not define a homomorphism");
            }
        frontier = std::move(next);
    }
}

CharacterModule CharacterModule::trivial(PermGroup group) {
    std::vector<int> ones(group.generators().size(), 1);
    return CharacterModule(std::move(group), std::move(ones));
}

CharacterModule CharacterModule::sign_power(PermGroup group, int j) {
    std::map<Perm, int> values;
    for (const auto& e : group.elements()) values[e] = (j % 2 != 0) ? perm_sign(e) : 1;
    return CharacterModule(std::move(group), std::move(values));
}

CharacterModule CharacterModule::from_values(PermGroup group, const std::map<Perm, int>& values) {
    return CharacterModule(std::move(group), values);
}

int CharacterModule::value(const Perm& g) const {
    auto it = values_.find(g);
    if (it == values_.end()) throw UsageError("element " + perm_str(g) + " is not in the group");
    return it->second;
}

bool CharacterModule::is_trivial() const {
    return std::all_of(values_.begin(), values_.end(), [](auto& kv) { return kv.second == 1; });
}

CharacterModule CharacterModule::restricted(const PermGroup& h) const {
    std::map<Perm, int> values;
    for (const auto& e : h.elements()) values[e] = value(e);
    return CharacterModule(h, std::move(values));
}

CharacterModule CharacterModule::operator*(const CharacterModule& other) const {
    if (!(group_ == other.group_)) throw UsageError("characters live on different groups");
    std::map<Perm, int> values;
    for (const auto& e : group_.elements()) values[e] = value(e) * other.value(e);
    return CharacterModule(group_, std::move(values));
}

int coinvariant_dim(const CharacterModule& m, Prime p) {
    if (m.group().order() % static_cast<std::size_t>(p.value()) == 0)
        throw UnsupportedError("coinvariants only compute homology when p does not divide |G| = " +
                               std::to_string(m.group().order()) + "; use small_group_homology");
    return m.is_trivial() ? 1 : 0;
}

namespace {

// chi(n) * a(n)^i must be 1 for every n normalizing P = <c>, where n c n^-1 = c^a(n).
struct SylowData {
    bool has_p = false;
    std::vector<std::pair<int, long long>> twists;  // (chi(n), a(n))
};

SylowData sylow_data(const CharacterModule& m, Prime p) {
    const auto& g = m.group();
    const std::size_t pp = static_cast<std::size_t>(p.value());
    SylowData out;
    if (g.order() % pp != 0) return out;
    if (g.order() % (pp * pp) == 0)
        throw UnsupportedError("Sylow " + std::to_string(p.value()) + "-subgroup of a group of order " +
                               std::to_string(g.order()) + " is not cyclic of order p");
    const Perm* c = nullptr;
    for (const auto& e : g.elements())
        if (perm_order(e) == p.value()) {
            c = &e;
            break;
        }
    std::vector<Perm> powers{identity_perm(g.degree())};
    for (int i = 1; i < p.value(); ++i) powers.push_back(compose(*c, powers.back()));
    out.has_p = true;
    for (const auto& n : g.elements()) {
        const Perm conj = compose(compose(n, *c), inverse(n));
        auto it = std::find(powers.begin(), powers.end(), conj);
        if (it == powers.end()) continue;
        out.twists.emplace_back(m.value(n), static_cast<long long>(it - powers.begin()));
    }
    return out;
}

int rank_from(const SylowData& d, const CharacterModule& m, Prime p, int s) {
    if (s < 0) return 0;
    if (s == 0) return m.is_trivial() ? 1 : 0;
    if (!d.has_p) return 0;
    const long long i = (s + 1) / 2;
    for (auto [chi, a] : d.twists)
        if ((chi * pow_mod(a, i, p.value()) - 1) % p.value() != 0) return 0;
    return 1;
}

}  // namespace

int group_homology_rank(const CharacterModule& m, Prime p, int s) {
    if (s < 0) return 0;
    return rank_from(sylow_data(m, p), m, p, s);
}

GradedDims small_group_homology(const CharacterModule& m, Prime p, int max_degree) {
    const SylowData d = sylow_data(m, p);
    GradedDims out;
    for (int s = 0; s <= max_degree; ++s) out.add(s, static_cast<std::size_t>(rank_from(d, m, p, s)));
    return out;
}

OpLabel solve_label(int degree, int base, Prime p) {
    const long long period = 2LL * (p.value() - 1);
    const long long diff = static_cast<long long>(degree) - base;
    for (int eps = 0; eps <= 1; ++eps)
        if ((diff + eps) % period == 0) return {eps, static_cast<int>(floor_div(diff + eps, period))};
    throw UsageError("degree " + std::to_string(degree) + " is not of the form " + std::to_string(base) +
                     " + 2(p-1)s - eps");
}

std::string op_label_string(int eps, int s, int inner_degree) {
    return std::string(eps ? "bQ^" : "Q^") + std::to_string(s) + " i(" + std::to_string(inner_degree) + ")";
}

bool instability_ok(int eps, int s, int inner_degree) {
    return eps == 0 ? 2 * s >= inner_degree : 2 * s > inner_degree;
}

GradedDims extended_power_sphere(Prime p, int j, int max_degree) {
    const auto chi = CharacterModule::sign_power(PermGroup::symmetric(p.value()), j);
    const SylowData d = sylow_data(chi, p);
    const int bottom = j * p.value();
    GradedDims out;
    for (int s = 0; bottom + s <= max_degree; ++s) {
        if (rank_from(d, chi, p, s) == 0) continue;
        const OpLabel l = solve_label(bottom + s, j, p);
        out.add_labelled(bottom + s, op_label_string(l.eps, l.s, j));
    }
    return out;
}

std::pair<std::uint32_t, std::string> transfer_scalar(const PermGroup& g, const PermGroup& h,
                                                      const CharacterModule& chi, Prime p, int s) {
    if (!h.is_subgroup_of(g)) throw UsageError("transfer target is not a subgroup of the source group");
    if (g == h) return {1, "identity"};
    const std::size_t index = g.order() / h.order();
    const std::size_t pp = static_cast<std::size_t>(p.value());
    if (index % pp == 0) return {0, "index-divisible"};
    if (g.order() % pp != 0) {
        if (s != 0) return {0, "coset-sum"};
        // Left cosets gH, each represented by its least element.
        std::set<Perm> reps;
        long long sum = 0;
        for (const auto& e : g.elements()) {
            Perm least = e;
            for (const auto& x : h.elements()) least = std::min(least, compose(e, x));
            if (reps.insert(least).second) sum += chi.value(inverse(least));
        }
        return {static_cast<std::uint32_t>(((sum % p.value()) + p.value()) % p.value()), "coset-sum"};
    }
    return {static_cast<std::uint32_t>(index % pp), "sylow-retaining"};
}

TransferResult transfer_map(const CharacterModule& from, const PermGroup& to, Prime p, int s) {
    const auto target_chi = from.restricted(to);
    const int src = group_homology_rank(from, p, s);
    const int dst = group_homology_rank(target_chi, p, s);
    auto [scalar, rule] = transfer_scalar(from.group(), to, from, p, s);
    Matrix m(static_cast<std::size_t>(dst), static_cast<std::size_t>(src), p);
    if (src == 1 && dst == 1) m.set(0, 0, scalar);
    return {std::move(m), std::move(rule)};
}

}  // namespace slk
