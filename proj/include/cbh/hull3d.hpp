#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "geometry.hpp"

namespace cbh {

struct HullError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Triangulated convex hull of a 3D point set (quickhull with outside sets).
/// Facets are oriented counterclockwise seen from outside.
class Hull3D {
  public:
    struct Facet {
        int v[3];
        int nb[3];  // nb[i] across edge (v[i], v[(i+1)%3])
        Vector3d normal;  // unit outward
        double offset;    // normal . x = offset on the facet plane
        double area;
    };

    explicit Hull3D(const std::vector<Vector3d>& points) : pts_(points) { build(); }

    const std::vector<Vector3d>& points() const { return pts_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// Indices into points() that lie on the hull.
    const std::vector<int>& vertex_indices() const { return vertex_indices_; }

    std::vector<Vector3d> vertices() const {
        std::vector<Vector3d> out;
        out.reserve(vertex_indices_.size());
        for (int i : vertex_indices_) out.push_back(pts_[i]);
        return out;
    }

    double volume() const {
        Vector3d c = Vector3d::Zero();
        for (int i : vertex_indices_) c += pts_[i];
        c /= static_cast<double>(vertex_indices_.size());
        double v = 0.0;
        for (const Facet& f : facets_) {
            v += (pts_[f.v[0]] - c).dot((pts_[f.v[1]] - c).cross(pts_[f.v[2]] - c));
        }
        return v / 6.0;
    }

    double surface_area() const {
        double s = 0.0;
        for (const Facet& f : facets_) s += f.area;
        return s;
    }

  private:
    struct WorkFacet {
        int v[3];
        int nb[3];
        Vector3d normal;
        double offset;
        bool dead = false;
        std::vector<int> outside;
    };

    std::vector<Vector3d> pts_;
    std::vector<Facet> facets_;
    std::vector<int> vertex_indices_;

    static Vector3d tri_normal(const Vector3d& a, const Vector3d& b, const Vector3d& c) {
        return (b - a).cross(c - a);
    }

    void build() {
        if (pts_.size() < 4) throw HullError("hull: need at least 4 points");
        double scale = 0.0;
        for (const auto& p : pts_) scale = std::max(scale, p.cwiseAbs().maxCoeff());
        if (scale == 0.0) throw HullError("hull: all points at origin");
        const double eps = 1e-10 * scale;

        // initial simplex from coordinate extremes
        int i0 = 0, i1 = 0;
        {
            double best = -1.0;
            std::array<int, 6> ext{};
            for (int d = 0; d < 3; ++d) {
                int lo = 0, hi = 0;
                for (int i = 1; i < (int)pts_.size(); ++i) {
                    if (pts_[i][d] < pts_[lo][d]) lo = i;
                    if (pts_[i][d] > pts_[hi][d]) hi = i;
                }
                ext[2 * d] = lo;
                ext[2 * d + 1] = hi;
            }
            for (int a = 0; a < 6; ++a)
                for (int b = a + 1; b < 6; ++b) {
                    double d = (pts_[ext[a]] - pts_[ext[b]]).norm();
                    if (d > best) {
                        best = d;
                        i0 = ext[a];
                        i1 = ext[b];
                    }
                }
            if (best <= eps) throw HullError("hull: degenerate (point-like) input");
        }
        int i2 = -1;
        {
            double best = -1.0;
            Vector3d d = (pts_[i1] - pts_[i0]).normalized();
            for (int i = 0; i < (int)pts_.size(); ++i) {
                Vector3d r = pts_[i] - pts_[i0];
                double dist = (r - r.dot(d) * d).norm();
                if (dist > best) {
                    best = dist;
                    i2 = i;
                }
            }
            if (best <= eps) throw HullError("hull: degenerate (collinear) input");
        }
        int i3 = -1;
        {
            Vector3d n = tri_normal(pts_[i0], pts_[i1], pts_[i2]).normalized();
            double best = -1.0;
            for (int i = 0; i < (int)pts_.size(); ++i) {
                double dist = std::abs(n.dot(pts_[i] - pts_[i0]));
                if (dist > best) {
                    best = dist;
                    i3 = i;
                }
            }
            if (best <= eps) throw HullError("hull: degenerate (coplanar) input");
        }

        std::vector<WorkFacet> fs;
        auto mk = [&](int a, int b, int c) {
            WorkFacet f;
            f.v[0] = a;
            f.v[1] = b;
            f.v[2] = c;
            Vector3d n = tri_normal(pts_[a], pts_[b], pts_[c]);
            f.normal = n.normalized();
            f.offset = f.normal.dot(pts_[a]);
            f.nb[0] = f.nb[1] = f.nb[2] = -1;
            return f;
        };
        // orient the initial tetrahedron
        {
            Vector3d n = tri_normal(pts_[i0], pts_[i1], pts_[i2]);
            if (n.dot(pts_[i3] - pts_[i0]) > 0.0) std::swap(i1, i2);
        }
        fs.push_back(mk(i0, i1, i2));
        fs.push_back(mk(i0, i2, i3));
        fs.push_back(mk(i2, i1, i3));
        fs.push_back(mk(i1, i0, i3));
        wire_neighbors(fs, {0, 1, 2, 3});

        // distribute points to outside sets
        for (int i = 0; i < (int)pts_.size(); ++i) {
            for (auto& f : fs) {
                if (f.normal.dot(pts_[i]) - f.offset > eps) {
                    f.outside.push_back(i);
                    break;
                }
            }
        }

        std::vector<int> stack;
        for (int i = 0; i < (int)fs.size(); ++i)
            if (!fs[i].outside.empty()) stack.push_back(i);

        std::vector<int> visible, horizon_f, horizon_e;
        while (!stack.empty()) {
            int fi = stack.back();
            stack.pop_back();
            if (fs[fi].dead || fs[fi].outside.empty()) continue;
            // furthest point of this facet's outside set
            int p = -1;
            double best = -1.0;
            for (int i : fs[fi].outside) {
                double d = fs[fi].normal.dot(pts_[i]) - fs[fi].offset;
                if (d > best) {
                    best = d;
                    p = i;
                }
            }
            // visible set via BFS
            visible.clear();
            horizon_f.clear();
            horizon_e.clear();
            std::vector<int> bfs{fi};
            std::vector<char> seen(fs.size(), 0);
            seen[fi] = 1;
            while (!bfs.empty()) {
                int g = bfs.back();
                bfs.pop_back();
                visible.push_back(g);
                for (int e = 0; e < 3; ++e) {
                    int nb = fs[g].nb[e];
                    if (nb < 0) throw HullError("hull: broken adjacency");
                    if (fs[nb].normal.dot(pts_[p]) - fs[nb].offset > eps) {
                        if (!seen[nb]) {
                            seen[nb] = 1;
                            bfs.push_back(nb);
                        }
                    } else {
                        horizon_f.push_back(g);
                        horizon_e.push_back(e);
                    }
                }
            }
            // build fan of new facets over the horizon
            std::vector<int> newf;
            std::unordered_map<int, int> first_of, second_of;
            for (std::size_t h = 0; h < horizon_f.size(); ++h) {
                int g = horizon_f[h], e = horizon_e[h];
                int a = fs[g].v[e], b = fs[g].v[(e + 1) % 3];
                int outer = fs[g].nb[e];
                WorkFacet f = mk(a, b, p);
                f.nb[0] = outer;
                int idx = (int)fs.size();
                fs.push_back(std::move(f));
                seen.push_back(0);
                // relink the outer neighbor to the new facet
                for (int k = 0; k < 3; ++k)
                    if (fs[outer].nb[k] == g) fs[outer].nb[k] = idx;
                first_of[a] = idx;
                second_of[b] = idx;
                newf.push_back(idx);
            }
            for (int idx : newf) {
                int a = fs[idx].v[0], b = fs[idx].v[1];
                auto itb = first_of.find(b);
                auto ita = second_of.find(a);
                if (itb == first_of.end() || ita == second_of.end())
                    throw HullError("hull: open horizon");
                fs[idx].nb[1] = itb->second;  // edge (b, p)
                fs[idx].nb[2] = ita->second;  // edge (p, a)
            }
            // redistribute outside points of dead facets
            for (int g : visible) fs[g].dead = true;
            for (int g : visible) {
                for (int i : fs[g].outside) {
                    if (i == p) continue;
                    for (int idx : newf) {
                        if (fs[idx].normal.dot(pts_[i]) - fs[idx].offset > eps) {
                            fs[idx].outside.push_back(i);
                            break;
                        }
                    }
                }
                fs[g].outside.clear();
            }
            for (int idx : newf)
                if (!fs[idx].outside.empty()) stack.push_back(idx);
        }

        // compact alive facets
        std::vector<int> remap(fs.size(), -1);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (fs[i].dead) continue;
            remap[i] = (int)facets_.size();
            Facet f;
            for (int k = 0; k < 3; ++k) f.v[k] = fs[i].v[k];
            f.normal = fs[i].normal;
            f.offset = fs[i].offset;
            f.area = 0.5 * tri_normal(pts_[f.v[0]], pts_[f.v[1]], pts_[f.v[2]]).norm();
            facets_.push_back(f);
        }
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (fs[i].dead) continue;
            for (int k = 0; k < 3; ++k) facets_[remap[i]].nb[k] = remap[fs[i].nb[k]];
        }
        std::vector<char> used(pts_.size(), 0);
        for (const auto& f : facets_)
            for (int k = 0; k < 3; ++k) used[f.v[k]] = 1;
        for (int i = 0; i < (int)pts_.size(); ++i)
            if (used[i]) vertex_indices_.push_back(i);
        if (facets_.size() < 4) throw HullError("hull: too few facets");
    }

    static void wire_neighbors(std::vector<WorkFacet>& fs, std::vector<int> idx) {
        auto key = [](int a, int b) { return (std::int64_t)std::min(a, b) << 32 | (std::uint32_t)std::max(a, b); };
        std::unordered_map<std::int64_t, std::pair<int, int>> half;
        for (int i : idx) {
            for (int e = 0; e < 3; ++e) {
                int a = fs[i].v[e], b = fs[i].v[(e + 1) % 3];
                auto k = key(a, b);
                auto it = half.find(k);
                if (it == half.end()) {
                    half[k] = {i, e};
                } else {
                    fs[i].nb[e] = it->second.first;
                    fs[it->second.first].nb[it->second.second] = i;
                }
            }
        }
    }
};

/// Hull with a perturbation fallback for near-degenerate inputs.
inline Hull3D compute_hull(const std::vector<Vector3d>& points) {
    try {
        return Hull3D(points);
    } catch (const HullError&) {
        double scale = 0.0;
        for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        std::vector<Vector3d> jittered = points;
        for (int attempt = 0; attempt < 3; ++attempt) {
            double mag = 1e-12 * scale * std::pow(10.0, attempt);
            for (auto& p : jittered)
                p += mag * Vector3d(d(rng), d(rng), d(rng));
            try {
                return Hull3D(jittered);
            } catch (const HullError&) {
            }
        }
        throw;
    }
}

}  // namespace cbh
