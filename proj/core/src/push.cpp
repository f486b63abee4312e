#include "polypack/push.hpp"

#include <cassert>
#include <vector>

namespace polypack {

namespace {

// Any jump larger than this in a nonzero component is guaranteed to leave
// the container (coordinates are capped at 2^40).
constexpr Coord kEscapeSpan = Coord{1} << 42;

Vector round_scaled(Vector v, int halvings) {
    const Wide den = Wide{1} << halvings;
    return {round_div_half_away(v.x, den), round_div_half_away(v.y, den)};
}

// A placement, or a rigid group of placements, moved as one unit.
class Mover {
public:
    Mover(PackingState& state, std::span<const int> ids) : state_(state), ids_(ids) {}

    Point anchor() const { return state_.slot(ids_.front()).pos; }

    bool inside_container_at(Vector delta) const {
        const Instance& inst = state_.instance();
        for (int id : ids_) {
            const auto& slot = state_.slot(id);
            if (!inside_container(inst.items[slot.item].chains, slot.pos + delta,
                                  inst.container)) {
                return false;
            }
        }
        return true;
    }

    bool valid_at(Vector delta) const {
        for (int id : ids_) {
            const auto& slot = state_.slot(id);
            if (!state_.valid_position(slot.item, slot.pos + delta, ids_)) return false;
        }
        return true;
    }

    void apply(Vector delta) {
        for (int id : ids_) state_.move(id, state_.slot(id).pos + delta);
    }

private:
    PackingState& state_;
    std::span<const int> ids_;
};

// Smallest k >= 0 such that the item jumped by v * 2^k is outside the
// container (or provably so by magnitude).
int initial_doubling(const Mover& m, Vector v) {
    for (int k = 0; k < 62; ++k) {
        const Wide mx = Wide(v.x < 0 ? -v.x : v.x) << k;
        const Wide my = Wide(v.y < 0 ? -v.y : v.y) << k;
        if (mx > kEscapeSpan || my > kEscapeSpan) return k;
        if (!m.inside_container_at({v.x << k, v.y << k})) return k;
    }
    return 62;
}

Point max_translate_impl(Mover& m, Vector v, Vector u, std::int64_t& budget, int* accepted) {
    assert(!(v == Vector{0, 0}));
    assert(!(u == Vector{0, 0}));
    assert(dot(u, v) > 0);

    for (;;) { // restarted whenever rounding bends the ray
        int k = initial_doubling(m, v);
        bool restart = false;
        while (budget-- > 0) {
            Vector w;
            if (k >= 0) {
                w = {v.x << k, v.y << k};
            } else {
                w = round_scaled(v, -k);
                if (w == Vector{0, 0}) return m.anchor(); // no reach left on this ray
                if (dot(u, w) <= 0) return m.anchor();    // rounding turned against u
                if (cross(w, v) != 0) {
                    // Rounding changed the direction: treat w as a fresh ray so
                    // the doubling search can jump far along it again.
                    v = w;
                    restart = true;
                    break;
                }
            }
            if (m.valid_at(w)) {
                m.apply(w);
                if (accepted) ++*accepted;
            } else {
                --k;
            }
        }
        if (!restart) return m.anchor(); // budget exhausted
    }
}

std::vector<int> alpha_sequence(const PushConfig& cfg) {
    std::vector<int> seq{0};
    const int span = std::max(cfg.alpha_max, -cfg.alpha_min);
    for (int a = 1; a <= span; ++a) {
        if (a <= cfg.alpha_max) seq.push_back(a);
        if (-a >= cfg.alpha_min) seq.push_back(-a);
    }
    return seq;
}

Point push_impl(PackingState& state, std::span<const int> ids, Vector u, const PushConfig& cfg,
                PushStats* stats) {
    assert(!(u == Vector{0, 0}));
    Mover m(state, ids);
    const Vector up = rot_ccw(u);
    const std::vector<int> alphas = alpha_sequence(cfg);

    std::int64_t budget = cfg.max_iterations;
    int accepted = 0;
    int stall = 0;
    std::size_t idx = 0;
    while (stall < cfg.max_stall_directions && budget > 0) {
        const int alpha = alphas[idx];
        idx = (idx + 1) % alphas.size();
        const Vector v{u.x + alpha * up.x, u.y + alpha * up.y};
        const Wide before = dot(u, m.anchor());
        max_translate_impl(m, v, u, budget, &accepted);
        if (dot(u, m.anchor()) > before) {
            stall = 0;
            idx = 0; // restart the sweep from the primary direction
        } else {
            ++stall;
        }
    }
    if (stats) {
        stats->iterations = cfg.max_iterations - budget;
        stats->accepted_moves = accepted;
        stats->hit_ceiling = budget <= 0;
    }
    return m.anchor();
}

} // namespace

Point max_translate(PackingState& state, int id, Vector v) {
    return max_translate(state, id, v, v);
}

Point max_translate(PackingState& state, int id, Vector v, Vector u) {
    const int ids[1] = {id};
    Mover m(state, ids);
    std::int64_t budget = PushConfig{}.max_iterations;
    return max_translate_impl(m, v, u, budget, nullptr);
}

Point max_translate_group(PackingState& state, std::span<const int> ids, Vector v, Vector u) {
    Mover m(state, ids);
    std::int64_t budget = PushConfig{}.max_iterations;
    return max_translate_impl(m, v, u, budget, nullptr);
}

Point push(PackingState& state, int id, Vector u, const PushConfig& cfg, PushStats* stats) {
    const int ids[1] = {id};
    return push_impl(state, {ids, 1}, u, cfg, stats);
}

Point push_group(PackingState& state, std::span<const int> ids, Vector u, const PushConfig& cfg,
                 PushStats* stats) {
    return push_impl(state, ids, u, cfg, stats);
}

} // namespace polypack
