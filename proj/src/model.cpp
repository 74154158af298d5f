#include "dirtt/model.hpp"

#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>

#include "dirtt/equality.hpp"

namespace dirtt {

std::optional<std::string> validate_preorder(const FinPreorder& p) {
    const std::size_t n = p.size();
    if (p.le.size() != n) return "le has " + std::to_string(p.le.size()) + " rows, expected " +
                                 std::to_string(n);
    for (std::size_t i = 0; i < n; ++i)
        if (p.le[i].size() != n)
            return "le row " + std::to_string(i) + " has " + std::to_string(p.le[i].size()) +
                   " entries, expected " + std::to_string(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!p.le[i][i]) return "reflexivity fails at " + p.elems[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (p.le[i][j] && p.le[j][k] && !p.le[i][k])
                    return "transitivity fails at (" + p.elems[i] + ", " + p.elems[j] + ", " +
                           p.elems[k] + ")";
    return std::nullopt;
}

FinPreorder opposite(const FinPreorder& p) {
    FinPreorder r = p;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) r.le[i][j] = p.le[j][i];
    return r;
}

FinPreorder core(const FinPreorder& p) {
    FinPreorder r = p;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) r.le[i][j] = p.le[i][j] && p.le[j][i];
    return r;
}

namespace {

FinPreorder numbered(std::size_t n, bool (*rel)(std::size_t, std::size_t)) {
    FinPreorder p;
    for (std::size_t i = 0; i < n; ++i) p.elems.push_back(std::to_string(i));
    p.le.assign(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p.le[i][j] = rel(i, j);
    return p;
}

}  // namespace

FinPreorder chain(std::size_t n) {
    return numbered(n, [](std::size_t i, std::size_t j) { return i <= j; });
}
FinPreorder discrete(std::size_t n) {
    return numbered(n, [](std::size_t i, std::size_t j) { return i == j; });
}
FinPreorder codiscrete(std::size_t n) {
    return numbered(n, [](std::size_t, std::size_t) { return true; });
}
FinPreorder singleton() { return {{"*"}, {{true}}}; }
FinPreorder empty_preorder() { return {}; }

std::optional<int> Table::lookup(const std::vector<int>& args) const {
    for (const auto& [pattern, result] : rows) {
        bool match = pattern.size() == args.size();
        for (std::size_t i = 0; match && i < args.size(); ++i)
            match = pattern[i] < 0 || pattern[i] == args[i];
        if (match) return result;
    }
    return std::nullopt;
}

std::uint64_t default_limit() {
    if (const char* s = std::getenv("DIRTT_LIMIT")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

int DepFamily::reindex(std::size_t p, std::size_t q, int elem) const {
    if (!ctx->le[p][q]) return -1;
    if (elem < 0 || static_cast<std::size_t>(elem) >= fibers[p].size()) return -1;
    if (fibers[q].size() != fibers[p].size()) return -1;
    return elem;
}

std::optional<std::string> validate_family(const DepFamily& fam) {
    const std::size_t n = fam.ctx->size();
    const auto& le = fam.ctx->le;
    const auto at = [](std::size_t p) { return "point " + std::to_string(p); };
    for (std::size_t p = 0; p < n; ++p) {
        if (auto v = validate_preorder(fam.fibers[p])) return "fiber at " + at(p) + ": " + *v;
        for (std::size_t e = 0; e < fam.fibers[p].size(); ++e)
            if (fam.reindex(p, p, static_cast<int>(e)) != static_cast<int>(e))
                return "reindex along the identity at " + at(p) + " moves an element";
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!le[p][q]) continue;
            const FinPreorder& fp = fam.fibers[p];
            const FinPreorder& fq = fam.fibers[q];
            for (std::size_t i = 0; i < fp.size(); ++i) {
                const int ri = fam.reindex(p, q, static_cast<int>(i));
                if (ri < 0)
                    return "no reindex from " + at(p) + " to " + at(q) + " (target fiber has " +
                           std::to_string(fq.size()) + " elements)";
                for (std::size_t j = 0; j < fp.size(); ++j) {
                    const int rj = fam.reindex(p, q, static_cast<int>(j));
                    if (fp.leq(i, j) && !fq.leq(ri, rj))
                        return "reindex from " + at(p) + " to " + at(q) + " is not monotone";
                }
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (!le[q][r]) continue;
                for (std::size_t i = 0; i < fp.size(); ++i) {
                    const int direct = fam.reindex(p, r, static_cast<int>(i));
                    const int via = fam.reindex(q, r, fam.reindex(p, q, static_cast<int>(i)));
                    if (direct != via)
                        return "reindex is not functorial along " + at(p) + " <= " + at(q) +
                               " <= " + at(r);
                }
            }
        }
    return std::nullopt;
}

std::optional<std::string> check_section(const DepFamily& fam, const SectionVal& s) {
    const std::size_t n = fam.ctx->size();
    if (s.values.size() != n) return "section has the wrong number of points";
    for (std::size_t p = 0; p < n; ++p)
        if (s.values[p] < 0 || static_cast<std::size_t>(s.values[p]) >= fam.fibers[p].size())
            return "no fiber element at point " + std::to_string(p);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!fam.ctx->le[p][q]) continue;
            const int moved = fam.reindex(p, q, s.values[p]);
            if (moved < 0 || !fam.fibers[q].leq(moved, s.values[q]))
                return "not monotone from point " + std::to_string(p) + " to point " +
                       std::to_string(q);
        }
    return std::nullopt;
}

namespace {

class SectionCounter {
public:
    SectionCounter(const DepFamily& fam, std::uint64_t limit, std::atomic<std::uint64_t>& nodes)
        : fam_(fam), limit_(limit), nodes_(nodes), values_(fam.ctx->size(), -1) {}

    std::uint64_t from(std::size_t p) {
        if (p == values_.size()) return 1;
        std::uint64_t total = 0;
        for (std::size_t e = 0; e < fam_.fibers[p].size(); ++e) {
            if (++nodes_ > limit_)
                throw SizeLimitExceeded("section search exceeded the limit of " +
                                        std::to_string(limit_) + " nodes");
            values_[p] = static_cast<int>(e);
            if (consistent(p)) total += from(p + 1);
        }
        values_[p] = -1;
        return total;
    }

    std::uint64_t with_first(int e) {
        values_[0] = e;
        return consistent(0) ? from(1) : 0;
    }

private:
    bool consistent(std::size_t p) const {
        const auto& le = fam_.ctx->le;
        for (std::size_t q = 0; q <= p; ++q) {
            if (le[q][p]) {
                const int m = fam_.reindex(q, p, values_[q]);
                if (m < 0 || !fam_.fibers[p].leq(m, values_[p])) return false;
            }
            if (le[p][q]) {
                const int m = fam_.reindex(p, q, values_[p]);
                if (m < 0 || !fam_.fibers[q].leq(m, values_[q])) return false;
            }
        }
        return true;
    }

    const DepFamily& fam_;
    std::uint64_t limit_;
    std::atomic<std::uint64_t>& nodes_;
    std::vector<int> values_;
};

}  // namespace

std::uint64_t count_sections(const DepFamily& fam, std::uint64_t limit, unsigned workers) {
    const std::size_t n = fam.ctx->size();
    if (n > limit)
        throw SizeLimitExceeded("context has " + std::to_string(n) + " points, limit is " +
                                std::to_string(limit));
    for (const auto& f : fam.fibers)
        if (f.size() == 0) return 0;
    std::atomic<std::uint64_t> nodes{0};
    if (n == 0) return 1;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t first = fam.fibers[0].size();
    if (workers == 1 || first == 1) return SectionCounter(fam, limit, nodes).from(0);
    // One task per value at the first point; the sum does not depend on the
    // schedule.
    std::vector<std::future<std::uint64_t>> parts;
    for (std::size_t e = 0; e < first; ++e)
        parts.push_back(std::async(std::launch::async, [&, e] {
            return SectionCounter(fam, limit, nodes).with_first(static_cast<int>(e));
        }));
    std::uint64_t total = 0;
    for (auto& f : parts) total += f.get();
    return total;
}

FinPreorder Interpreter::fiber(const Type& t, const Env& env) const {
    switch (t->kind) {
        case TypeKind::Base: {
            const auto it = model_.bases.find(t->name);
            if (it == model_.bases.end())
                throw ModelError("no preorder assigned to type '" + t->name + "'");
            FinPreorder p = it->second;
            if (t->mod.flat) p = core(p);
            if (t->mod.neg) p = opposite(p);
            return p;
        }
        case TypeKind::RawNeg:
            return opposite(fiber(t->inner, env));
        case TypeKind::RawFlat:
            return core(fiber(t->inner, env));
        case TypeKind::Hom: {
            // subsingleton: inhabited iff dom ≤ cod in the carrier's fiber
            const FinPreorder c = fiber(t->inner, env);
            const int d = eval(t->dom, env);
            const int z = eval(t->cod, env);
            const bool in = d >= 0 && z >= 0 && static_cast<std::size_t>(d) < c.size() &&
                            static_cast<std::size_t>(z) < c.size() && c.leq(d, z);
            return in ? singleton() : empty_preorder();
        }
    }
    return empty_preorder();
}

int Interpreter::eval(const Term& t, const Env& env) const {
    switch (t->kind) {
        case TermKind::VarP:
            return env.polar.at(env.polar.size() - 1 - t->index);
        case TermKind::VarN:
            return env.neutral.at(env.neutral.size() - 1 - t->index);
        case TermKind::InjPlus:
        case TermKind::InjMinus:
        case TermKind::CoePlus:
        case TermKind::CoeMinus:
            // every modality keeps the element set
            return eval(t->args[0], env);
        case TermKind::Refl:
        case TermKind::Uhp:
        case TermKind::Fwd:
        case TermKind::Back:
            return 0;
        case TermKind::Jpm: {
            // Transport of the base from the refl instance; reindexing is the
            // identity on elements.
            Env inner{env.neutral, {}};
            inner.neutral.push_back(eval(t->args[kJAnchor], env));
            return eval(t->args[kJBase], inner);
        }
        case TermKind::Sym:
        case TermKind::Axiom: {
            std::vector<int> args;
            for (const auto& a : t->args) args.push_back(eval(a, env));
            if (t->kind == TermKind::Axiom) {
                const ConstantDecl* c = sig_.find_constant(t->name);
                if (!c) throw ModelError("unknown constant '" + t->name + "'");
                if (c->is_definition()) return eval(c->body, Env{args, {}});
                if (normalize_type(&sig_, c->type)->kind == TypeKind::Hom) return 0;
            }
            const auto it = model_.tables.find(t->name);
            if (it == model_.tables.end())
                throw ModelError("no table assigned to '" + t->name + "'");
            const auto v = it->second.lookup(args);
            if (!v) throw ModelError("table for '" + t->name + "' has no matching row");
            return *v;
        }
    }
    return -1;
}

SemContext Interpreter::interp_ctx(const Context& ctx, std::uint64_t limit) const {
    SemContext sc;
    sc.points.push_back({});
    sc.le = {{true}};
    const auto extend = [&](const Type& t, bool neutral) {
        SemContext next;
        std::vector<std::size_t> origin;
        std::vector<FinPreorder> fibers;
        for (std::size_t p = 0; p < sc.size(); ++p) {
            fibers.push_back(fiber(t, sc.points[p]));
            for (std::size_t e = 0; e < fibers[p].size(); ++e) {
                Env env = sc.points[p];
                (neutral ? env.neutral : env.polar).push_back(static_cast<int>(e));
                next.points.push_back(std::move(env));
                origin.push_back(p);
                if (next.points.size() > limit)
                    throw SizeLimitExceeded("context has more than " + std::to_string(limit) +
                                            " points");
            }
        }
        const std::size_t n = next.points.size();
        next.le.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t p = origin[i], q = origin[j];
                if (!sc.le[p][q] || fibers[p].size() != fibers[q].size()) continue;
                const auto& vi = neutral ? next.points[i].neutral : next.points[i].polar;
                const auto& vj = neutral ? next.points[j].neutral : next.points[j].polar;
                const int a = vi.back(), b = vj.back();
                // neutral extension keeps only the two-sided part of the fiber
                next.le[i][j] = fibers[q].leq(a, b) && (!neutral || fibers[q].leq(b, a));
            }
        sc = std::move(next);
    };
    for (const auto& t : ctx.neutral) extend(t, true);
    for (const auto& t : ctx.polar) extend(t, false);
    return sc;
}

DepFamily Interpreter::interp_type(const SemContext& sc, const Type& t) const {
    DepFamily fam;
    fam.ctx = &sc;
    for (const auto& env : sc.points) fam.fibers.push_back(fiber(t, env));
    return fam;
}

SectionVal Interpreter::interp_term(const SemContext& sc, const Term& t) const {
    SectionVal s;
    for (const auto& env : sc.points) s.values.push_back(eval(t, env));
    return s;
}

}  // namespace dirtt
