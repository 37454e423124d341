#include "orbitclass/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace orbitclass {

namespace {

constexpr int kFeasibleRadiusCap = 12;  // absolute enumeration depth limit

// ccw orientation of three unit vectors = cyclic order on the circle
inline double circ_orient(Cplx a, Cplx b, Cplx c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) -
           (b.imag() - a.imag()) * (c.real() - a.real());
}

}  // namespace

LinkState link_state(const AxisC& x, const AxisC& y) {
    for (Cplx a : {x.attracting, x.repelling})
        for (Cplx b : {y.attracting, y.repelling})
            if (std::abs(a - b) < kDegenTol) return LinkState::SharedAxis;
    // y's endpoints separate x's endpoints iff they lie on opposite sides of
    // the chord through x's endpoints
    double s1 = circ_orient(x.attracting, x.repelling, y.attracting);
    double s2 = circ_orient(x.attracting, x.repelling, y.repelling);
    return (s1 > 0.0) != (s2 > 0.0) ? LinkState::Linked : LinkState::Unlinked;
}

bool axes_linked(const Axis& x, const Axis& y) {
    AxisC xc{std::polar(1.0, x.attracting), std::polar(1.0, x.repelling)};
    AxisC yc{std::polar(1.0, y.attracting), std::polar(1.0, y.repelling)};
    LinkState s = link_state(xc, yc);
    if (s == LinkState::SharedAxis)
        throw InputError("axes_linked: near-coincident endpoints (shared axis)");
    return s == LinkState::Linked;
}

// --- cache ------------------------------------------------------------------

void IntersectionCache::open(const std::string& path) {
    std::lock_guard<std::mutex> lock(mu_);
    path_ = path;
    entries_.clear();
    corrupt_ = false;
    std::ifstream in(path);
    if (!in.good()) return;
    try {
        nlohmann::json j;
        in >> j;
        for (auto& [key, val] : j.at("entries").items())
            entries_[key] = {val.at("count").get<int>(), val.at("radius_used").get<int>()};
    } catch (const std::exception& e) {
        std::cerr << "warning: intersection cache " << path << " unreadable (" << e.what()
                  << "); rebuilding\n";
        entries_.clear();
        corrupt_ = true;
    }
}

std::optional<std::pair<int, int>> IntersectionCache::lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void IntersectionCache::store(const std::string& key, int count, int radius) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_[key] = {count, radius};
}

void IntersectionCache::save() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (path_.empty()) return;
    nlohmann::json j;
    j["schema_version"] = 1;
    j["entries"] = nlohmann::json::object();
    for (const auto& [key, val] : entries_)
        j["entries"][key] = {{"count", val.first}, {"radius_used", val.second}};
    std::ofstream out(path_);
    out << j.dump(2) << "\n";
}

void IntersectionCache::invalidate_genus(int genus) {
    std::lock_guard<std::mutex> lock(mu_);
    std::string prefix = std::to_string(genus) + "|";
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->first.rfind(prefix, 0) == 0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

std::size_t IntersectionCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

std::string intersection_cache_key(const CyclicWord& w, const CyclicWord& v,
                                   const SurfacePresentation& p) {
    std::string kw = unoriented_key(w, p);
    std::string kv = unoriented_key(v, p);
    if (kv < kw) std::swap(kw, kv);
    return std::to_string(p.genus) + "|" + kw + "|" + kv;
}

// --- double-coset enumeration ----------------------------------------------

namespace {

struct LinkedElement {
    std::vector<Letter> word;
    DiskMobius mat;
    int depth;
};

struct EnumerationSetup {
    DiskMobius mw, mv;
    AxisC axis_w, axis_v;
    bool self_mode = false;
    double prune_base = 0.0;   // cosh threshold handled at call sites
    double step_disp = 0.0;    // max generator displacement
    double r_need = 0.0;
};

// matrices nearly equal up to overall sign
bool mobius_close(const DiskMobius& a, const DiskMobius& b) {
    double scale = 1.0 + std::max(std::abs(a.alpha), std::abs(a.beta));
    double plus = std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta);
    double minus = std::abs(a.alpha + b.alpha) + std::abs(a.beta + b.beta);
    return std::min(plus, minus) < 1e-6 * scale;
}

// collect all linked elements of word length <= r
void dfs_collect(const FuchsianRep& rep, const EnumerationSetup& setup, int r,
                 std::vector<LinkedElement>& out) {
    struct Frame {
        DiskMobius mat;
        Letter last;
        int depth;
    };
    std::vector<Letter> word;
    std::vector<Letter> alphabet;
    for (int gid = 0; gid < rep.pres.generator_count(); ++gid) {
        alphabet.push_back(gid + 1);
        alphabet.push_back(-(gid + 1));
    }

    auto consider = [&](const DiskMobius& g, int depth) {
        AxisC moved{g.apply(setup.axis_v.attracting), g.apply(setup.axis_v.repelling)};
        LinkState s = link_state(setup.axis_w, moved);
        if (s == LinkState::Linked) out.push_back({word, g, depth});
    };

    auto rec = [&](auto&& self, const DiskMobius& g, int depth) -> void {
        consider(g, depth);
        if (depth == r) return;
        // displacement prune: descendants can shrink at most step_disp per letter
        double disp = std::acosh(std::max(1.0, g.cosh_displacement()));
        if (disp - setup.step_disp * (r - depth) > setup.r_need) return;
        for (Letter l : alphabet) {
            if (!word.empty() && word.back() == -l) continue;
            word.push_back(l);
            DiskMobius nx = g * rep.letter_mobius(l);
            nx.normalize();
            self(self, nx, depth + 1);
            word.pop_back();
        }
    };
    rec(rec, DiskMobius::identity(), 0);
}

// Grouping of linked elements into double cosets. The crossing parameter on
// the w-axis modulo one period is a coset invariant (right v-shifts fix the
// moved axis, left w-shifts translate the crossing by whole periods), so
// elements are bucketed by it first; the algebraic membership test then runs
// only on bucket representatives.
struct CosetGroups {
    std::vector<std::vector<const LinkedElement*>> groups;
};

CosetGroups group_cosets(const std::vector<LinkedElement>& els, const EnumerationSetup& setup,
                         const DiskGeodesic& axis_w_geo, double lw, int power_bound) {
    std::vector<DiskMobius> wp(2 * power_bound + 1), vp(2 * power_bound + 1);
    wp[power_bound] = DiskMobius::identity();
    vp[power_bound] = DiskMobius::identity();
    for (int i = 1; i <= power_bound; ++i) {
        wp[power_bound + i] = wp[power_bound + i - 1] * setup.mw;
        wp[power_bound + i].normalize();
        wp[power_bound - i] = wp[power_bound - i + 1] * setup.mw.inverse();
        wp[power_bound - i].normalize();
        vp[power_bound + i] = vp[power_bound + i - 1] * setup.mv;
        vp[power_bound + i].normalize();
        vp[power_bound - i] = vp[power_bound - i + 1] * setup.mv.inverse();
        vp[power_bound - i].normalize();
    }

    auto same_coset = [&](const DiskMobius& g1, const DiskMobius& g2) {
        for (const auto& wi : wp) {
            DiskMobius li = (wi * g1).inverse();
            // need v^j = (w^i g1)^-1 g2
            DiskMobius x = li * g2;
            x.normalize();
            for (const auto& vj : vp)
                if (mobius_close(x, vj)) return true;
            if (setup.self_mode) {
                DiskMobius xi = li * g2.inverse();
                xi.normalize();
                for (const auto& vj : vp)
                    if (mobius_close(xi, vj)) return true;
            }
        }
        return false;
    };

    auto crossing_param = [&](const DiskMobius& g) {
        AxisC moved{g.apply(setup.axis_v.attracting), g.apply(setup.axis_v.repelling)};
        DiskGeodesic mg = DiskGeodesic::from_ideal(moved.repelling, moved.attracting);
        Cplx z;
        if (!geodesic_intersection(axis_w_geo, mg, z))
            return 0.0;  // borderline linking; algebraic test will place it
        double t = std::fmod(axis_w_geo.param_of(z), lw);
        if (t < 0.0) t += lw;
        return t;
    };

    struct Tagged {
        const LinkedElement* el;
        double t;
    };
    std::vector<Tagged> tagged;
    tagged.reserve(els.size());
    for (const auto& e : els) {
        double t = crossing_param(e.mat);
        if (setup.self_mode) t = std::min(t, crossing_param(e.mat.inverse()));
        tagged.push_back({&e, t});
    }
    std::sort(tagged.begin(), tagged.end(), [](const Tagged& a, const Tagged& b) { return a.t < b.t; });

    // bucket by parameter (wrap-around merged)
    std::vector<std::vector<const LinkedElement*>> buckets;
    const double tol = 1e-6 * (1.0 + lw);
    for (const auto& tg : tagged) {
        if (!buckets.empty() && tg.t - tagged[&tg - tagged.data() - 1].t < tol)
            buckets.back().push_back(tg.el);
        else
            buckets.push_back({tg.el});
    }
    if (buckets.size() >= 2 && (tagged.back().t - tagged.front().t) > lw - tol &&
        lw - (tagged.back().t - tagged.front().t) < tol) {
        for (auto* e : buckets.back()) buckets.front().push_back(e);
        buckets.pop_back();
    }

    // union-find across bucket representatives; verify members against their
    // representative and split strays into their own groups
    std::vector<int> parent(buckets.size());
    for (std::size_t i = 0; i < buckets.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < buckets.size(); ++i)
        for (std::size_t j = i + 1; j < buckets.size(); ++j) {
            if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
            if (same_coset(buckets[i].front()->mat, buckets[j].front()->mat))
                parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
        }
    std::map<int, std::vector<const LinkedElement*>> merged;
    std::vector<const LinkedElement*> strays;
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        auto& dst = merged[find(static_cast<int>(i))];
        for (const auto* e : buckets[i]) {
            if (e == buckets[i].front() || same_coset(buckets[i].front()->mat, e->mat))
                dst.push_back(e);
            else
                strays.push_back(e);
        }
    }
    CosetGroups out;
    for (auto& [root, members] : merged) out.groups.push_back(std::move(members));
    for (const auto* s : strays) {
        bool placed = false;
        for (auto& grp : out.groups) {
            if (same_coset(grp.front()->mat, s->mat)) {
                grp.push_back(s);
                placed = true;
                break;
            }
        }
        if (!placed) out.groups.push_back({s});
    }
    return out;
}

// self-mode: the same geometric crossing appears as the coset of g and of
// g^-1; group_cosets identifies them via the inversion relation
IntersectionResult enumerate_cosets(const CyclicWord& cw, const CyclicWord& cv,
                                    const FuchsianRep& rep, int radius_arg, bool self_mode) {
    EnumerationSetup setup;
    setup.self_mode = self_mode;
    setup.mw = evaluate_disk(Word(cw.letters), rep);
    setup.mv = evaluate_disk(Word(cv.letters), rep);
    setup.axis_w = axis_endpoints_disk(setup.mw);
    setup.axis_v = axis_endpoints_disk(setup.mv);

    double lw = translation_length(setup.mw);
    double lv = translation_length(setup.mv);
    DiskGeodesic gw = DiskGeodesic::from_ideal(setup.axis_w.repelling, setup.axis_w.attracting);
    DiskGeodesic gv = DiskGeodesic::from_ideal(setup.axis_v.repelling, setup.axis_v.attracting);
    double dw = hyp_dist(Cplx(0, 0), gw.closest_to_origin());
    double dv = hyp_dist(Cplx(0, 0), gv.closest_to_origin());
    // every linked double coset has a representative whose basepoint image
    // stays within this radius (window on the w-axis plus half a v-period);
    // the +6 covers prefix wander of geodesic words
    setup.r_need = dw + dv + 0.5 * (lw + lv) + 1.0 + 6.0;

    setup.step_disp = 0.0;
    for (int gid = 0; gid < rep.pres.generator_count(); ++gid) {
        double d = std::acosh(rep.letter_mobius(gid + 1).cosh_displacement());
        setup.step_disp = std::max(setup.step_disp, d);
    }

    int default_radius =
        static_cast<int>(cw.size()) + static_cast<int>(cv.size()) + 4 * rep.pres.genus;
    int cap = radius_arg > 0 ? radius_arg : default_radius;
    cap = std::min(cap, kFeasibleRadiusCap);

    int power_bound = static_cast<int>(std::ceil(2.0 * setup.r_need / std::max(1.0, lw))) + 2;
    power_bound = std::min(power_bound, 24);

    std::vector<int> counts;
    for (int r = 1; r <= cap; ++r) {
        std::vector<LinkedElement> els;
        dfs_collect(rep, setup, r, els);
        auto groups = group_cosets(els, setup, power_bound);
        counts.push_back(static_cast<int>(groups.size()));
        std::size_t nc = counts.size();
        if (nc >= 3 && counts[nc - 1] == counts[nc - 2] && counts[nc - 2] == counts[nc - 3]) {
            IntersectionResult res;
            res.count = counts.back();
            res.radius_used = r;
            res.stable = true;
            for (const auto& grp : groups) {
                const std::vector<Letter>* best = nullptr;
                for (const auto* m : grp)
                    if (!best || shortlex_less(m->word, *best)) best = &m->word;
                res.certificates.push_back(compact_word(*best));
            }
            std::sort(res.certificates.begin(), res.certificates.end());
            return res;
        }
    }
    throw RadiusExhausted("intersection count did not stabilize by radius " +
                          std::to_string(cap) + " for " + compact_word(cw.letters) + " vs " +
                          compact_word(cv.letters));
}

}  // namespace

IntersectionResult intersection_number(const CyclicWord& w, const CyclicWord& v,
                                       const FuchsianRep& rep, int radius,
                                       IntersectionCache* cache) {
    CyclicWord cw = canonical_conjugacy_form(w, rep.pres);
    CyclicWord cv = canonical_conjugacy_form(v, rep.pres);
    bool same_curve = unoriented_key(cw, rep.pres) == unoriented_key(cv, rep.pres);

    std::string key = intersection_cache_key(cw, cv, rep.pres);
    if (cache) {
        if (auto hit = cache->lookup(key)) {
            IntersectionResult res;
            res.count = hit->first;
            res.radius_used = hit->second;
            res.stable = true;
            return res;
        }
    }
    IntersectionResult res = enumerate_cosets(cw, cv, rep, radius, same_curve);
    if (cache) cache->store(key, res.count, res.radius_used);
    return res;
}

IntersectionResult self_intersection_number(const CyclicWord& w, const FuchsianRep& rep,
                                            int radius, IntersectionCache* cache) {
    CyclicWord cw = canonical_conjugacy_form(w, rep.pres);
    if (!is_primitive(cw, rep.pres))
        throw InputError("self_intersection_number: non-primitive input rejected");
    return intersection_number(cw, cw, rep, radius, cache);
}

// --- tracing oracle ----------------------------------------------------------

int tracing_oracle_count(const CyclicWord& w, const CyclicWord& v, const FuchsianRep& rep) {
    CyclicWord cw = canonical_conjugacy_form(w, rep.pres);
    CyclicWord cv = canonical_conjugacy_form(v, rep.pres);
    if (unoriented_key(cw, rep.pres) == unoriented_key(cv, rep.pres))
        throw InputError("tracing_oracle_count: same-curve input rejected");

    GeodesicTrace tw = geodesic_trace(Word(cw.letters), rep);
    // a degenerate crossing configuration is escaped by retracing one curve
    // displaced by a conjugator; the crossing set in the surface is unchanged
    auto conjugators = perturbation_conjugators(rep.pres);
    for (int attempt = -1; attempt < static_cast<int>(conjugators.size()); ++attempt) {
        Word vv = Word(cv.letters);
        if (attempt >= 0) {
            std::vector<Letter> ls = conjugators[attempt].letters;
            ls.insert(ls.end(), cv.letters.begin(), cv.letters.end());
            Word inv = invert(conjugators[attempt]);
            ls.insert(ls.end(), inv.letters.begin(), inv.letters.end());
            vv = free_reduce(Word(ls));
        }
        try {
            GeodesicTrace tv = geodesic_trace(vv, rep);
            return static_cast<int>(crossings_between(tw, tv, rep).size());
        } catch (const DegenerateGeometry&) {
        }
    }
    throw DegenerateGeometry("tracing_oracle_count: no displacement resolved the degeneracy");
}

int tracing_self_count(const CyclicWord& w, const FuchsianRep& rep) {
    CyclicWord cw = canonical_conjugacy_form(w, rep.pres);
    auto conjugators = perturbation_conjugators(rep.pres);
    for (int attempt = -1; attempt < static_cast<int>(conjugators.size()); ++attempt) {
        Word ww = Word(cw.letters);
        if (attempt >= 0) {
            std::vector<Letter> ls = conjugators[attempt].letters;
            ls.insert(ls.end(), cw.letters.begin(), cw.letters.end());
            Word inv = invert(conjugators[attempt]);
            ls.insert(ls.end(), inv.letters.begin(), inv.letters.end());
            ww = free_reduce(Word(ls));
        }
        try {
            GeodesicTrace t = geodesic_trace(ww, rep);
            return static_cast<int>(self_crossings(t, rep).size());
        } catch (const DegenerateGeometry&) {
        }
    }
    throw DegenerateGeometry("tracing_self_count: no displacement resolved the degeneracy");
}

}  // namespace orbitclass
