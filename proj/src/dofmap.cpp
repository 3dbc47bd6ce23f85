#include "lsfem/dofmap.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "lsfem/elements.hpp"

namespace lsfem {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

Eigen::Vector2d vertex_point(const Mesh& mesh, int v) {
    return {mesh.vertices[v].x, mesh.vertices[v].y};
}

}  // namespace

std::vector<int> DofMap::boundary_dofs() const {
    std::vector<int> out;
    for (int i = 0; i < total_dofs; ++i)
        if (on_boundary[i]) out.push_back(i);
    return out;
}

DofMap build_dofmap(const Mesh& mesh, int degree) {
    if (degree < 1 || degree > 3)
        throw std::invalid_argument("dofmap degree must be in {1,2,3}");

    DofMap map;
    map.degree = degree;

    // Deterministic edge numbering: first-encounter order over the element
    // loop. Also record boundary edges from the carried flags.
    std::map<EdgeKey, int> edge_ids;
    std::map<EdgeKey, bool> edge_boundary;
    for (const auto& t : mesh.triangles) {
        for (int j = 0; j < 3; ++j) {
            const EdgeKey key = edge_key(t.v[(j + 1) % 3], t.v[(j + 2) % 3]);
            if (!edge_ids.count(key)) edge_ids.emplace(key, static_cast<int>(edge_ids.size()));
            if (t.boundary_flags[j]) edge_boundary[key] = true;
        }
    }
    map.edge_count = static_cast<int>(edge_ids.size());

    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();
    const int per_edge = degree - 1;
    map.total_dofs = nv + per_edge * map.edge_count + (degree == 3 ? nt : 0);
    map.dof_coords.assign(map.total_dofs, Eigen::Vector2d::Zero());
    map.on_boundary.assign(map.total_dofs, 0);

    for (int v = 0; v < nv; ++v) map.dof_coords[v] = vertex_point(mesh, v);
    for (const auto& [key, id] : edge_ids) {
        const Eigen::Vector2d a = vertex_point(mesh, key.first);
        const Eigen::Vector2d b = vertex_point(mesh, key.second);
        const bool bdry = edge_boundary.count(key) && edge_boundary.at(key);
        if (bdry) {
            map.on_boundary[key.first] = 1;
            map.on_boundary[key.second] = 1;
        }
        for (int m = 0; m < per_edge; ++m) {
            const int dof = nv + per_edge * id + m;
            const double s = static_cast<double>(m + 1) / degree;
            map.dof_coords[dof] = (1.0 - s) * a + s * b;
            map.on_boundary[dof] = bdry ? 1 : 0;
        }
    }

    map.cell_dofs.assign(nt, {});
    for (int k = 0; k < nt; ++k) {
        const Triangle& t = mesh.triangles[k];
        std::vector<int>& dofs = map.cell_dofs[k];
        dofs.reserve(basis_node_count(degree));
        for (int i = 0; i < 3; ++i) dofs.push_back(t.v[i]);
        if (degree >= 2) {
            for (int j = 0; j < 3; ++j) {
                const int a = t.v[(j + 1) % 3], b = t.v[(j + 2) % 3];
                const int id = edge_ids.at(edge_key(a, b));
                if (degree == 2) {
                    dofs.push_back(nv + id);
                } else {
                    // Local edge nodes walk a -> b; the global pair walks from
                    // the lower vertex index so both incident triangles agree.
                    const int first = nv + 2 * id, second = nv + 2 * id + 1;
                    if (a < b) {
                        dofs.push_back(first);
                        dofs.push_back(second);
                    } else {
                        dofs.push_back(second);
                        dofs.push_back(first);
                    }
                }
            }
        }
        if (degree == 3) {
            const int dof = nv + 2 * map.edge_count + k;
            dofs.push_back(dof);
            map.dof_coords[dof] = (vertex_point(mesh, t.v[0]) + vertex_point(mesh, t.v[1]) +
                                   vertex_point(mesh, t.v[2])) /
                                  3.0;
        }
    }
    return map;
}

std::vector<double> interpolate(const DofMap& dofmap,
                                const std::function<double(double, double)>& field) {
    std::vector<double> out(dofmap.total_dofs);
    for (int i = 0; i < dofmap.total_dofs; ++i)
        out[i] = field(dofmap.dof_coords[i].x(), dofmap.dof_coords[i].y());
    return out;
}

double evaluate_fe(const Mesh& mesh, const DofMap& dofmap, const std::vector<double>& coeffs,
                   double x, double y) {
    const Eigen::Vector2d p(x, y);
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const ElementMap map = ElementMap::from_triangle(mesh, k);
        const Eigen::Vector2d ref = map.jacobian.inverse() * (p - map.origin);
        const double tol = 1e-12;
        if (ref.x() < -tol || ref.y() < -tol || ref.x() + ref.y() > 1.0 + tol) continue;
        const auto basis = basis_eval(dofmap.degree, ref);
        double value = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            value += coeffs[dofmap.cell_dofs[k][i]] * basis[i].value;
        return value;
    }
    throw std::domain_error("evaluate_fe: point outside the mesh");
}

BlockLayout build_block_layout(const DofMap& u_map, const DofMap& sigma_map) {
    BlockLayout layout;
    layout.n_u = u_map.total_dofs;
    layout.n_sigma = sigma_map.total_dofs;
    layout.total = layout.n_u + 2 * layout.n_sigma;
    layout.free_of_global.assign(layout.total, -1);
    layout.global_of_free.clear();
    for (int i = 0; i < layout.total; ++i) {
        const bool constrained = i < layout.n_u && u_map.on_boundary[i];
        if (constrained) continue;
        layout.free_of_global[i] = static_cast<int>(layout.global_of_free.size());
        layout.global_of_free.push_back(i);
    }
    layout.free_count = static_cast<int>(layout.global_of_free.size());
    return layout;
}

}  // namespace lsfem
