// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <type_traits>
#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uaris/core.hpp"

namespace uaris {

/// Planar array of reflectors. Positions are stored column-wise (one 3-vector per element)
/// in the same order as `ids`.
///
/// Elements are isotropic point scatterers unless `element_aperture` (meters) is positive,
/// in which case each element radiates like a baffled circular piston of that diameter
/// into the half-space the normal points to.
template <typename Scalar = double>
class ArrayGeometry
{
public:
    using Positions = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

    static constexpr Scalar kPlanarTolerance = Scalar(1e-9);

    ArrayGeometry(std::vector<int> ids, Positions positions, const Vector3<Scalar> &normal,
                  Scalar element_aperture = Scalar(0))
        : ids_(std::move(ids)), positions_(std::move(positions)), normal_(normal),
          element_aperture_(element_aperture)
    {
        if (static_cast<Eigen::Index>(ids_.size()) != positions_.cols())
            throw ContractViolation("array ids and positions differ in length");
        if (ids_.empty())
            throw ContractViolation("array needs at least one element");
        const Scalar n = normal_.norm();
        if (!(n > 0))
            throw DomainError("array normal must be non-zero");
        normal_ /= n;
        if (!(element_aperture_ >= 0))
            throw DomainError("element aperture must be non-negative");
        for (Eigen::Index i = 0; i < positions_.cols(); ++i) {
            if (!positions_.col(i).allFinite())
                throw DomainError("element positions must be finite");
            if (std::abs((positions_.col(i) - positions_.col(0)).dot(normal_)) > kPlanarTolerance)
                throw DomainError("array elements are not coplanar with the given normal");
        }
        std::vector<int> sorted = ids_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ContractViolation("element ids must be unique");
        for (std::size_t i = 0; i < ids_.size(); ++i)
            index_.emplace(ids_[i], static_cast<Eigen::Index>(i));
    }

    /// rows x cols grid centred on the origin. Column index advances along `col_axis`, row
    /// index along `row_axis`; ids are row-major (id = row * cols + col) and the normal is
    /// col_axis x row_axis.
    static ArrayGeometry grid(int rows, int cols, Scalar spacing,
                              const Vector3<Scalar> &col_axis = Vector3<Scalar>::UnitX(),
                              const Vector3<Scalar> &row_axis = Vector3<Scalar>::UnitY(),
                              Scalar element_aperture = Scalar(0))
    {
        if (rows < 1 || cols < 1)
            throw DomainError("grid needs at least one row and one column");
        if (!(spacing > 0))
            throw DomainError("grid spacing must be positive");
        const Vector3<Scalar> cu = col_axis.normalized();
        const Vector3<Scalar> ru = row_axis.normalized();
        if (std::abs(cu.dot(ru)) > Scalar(1e-9))
            throw DomainError("grid axes must be orthogonal");

        std::vector<int> ids(static_cast<std::size_t>(rows) * cols);
        Positions pos(3, rows * cols);
        const Scalar c0 = Scalar(cols - 1) / 2;
        const Scalar r0 = Scalar(rows - 1) / 2;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                const int id = r * cols + c;
                ids[id] = id;
                pos.col(id) = (Scalar(c) - c0) * spacing * cu + (Scalar(r) - r0) * spacing * ru;
            }
        return ArrayGeometry(std::move(ids), std::move(pos), cu.cross(ru), element_aperture);
    }

    Eigen::Index size() const { return positions_.cols(); }
    const std::vector<int> &ids() const { return ids_; }
    const Positions &positions() const { return positions_; }
    auto position(Eigen::Index i) const { return positions_.col(i); }
    const Vector3<Scalar> &normal() const { return normal_; }
    Scalar element_aperture() const { return element_aperture_; }

    Eigen::Index index_of(int id) const
    {
        const auto it = index_.find(id);
        if (it == index_.end())
            throw ContractViolation("unknown element id " + std::to_string(id));
        return it->second;
    }

    ArrayGeometry translated(const Vector3<Scalar> &offset) const
    {
        Positions moved = positions_.colwise() + offset;
        return ArrayGeometry(ids_, std::move(moved), normal_, element_aperture_);
    }

    ArrayGeometry with_element_aperture(Scalar aperture) const
    {
        return ArrayGeometry(ids_, positions_, normal_, aperture);
    }

    /// Far-field amplitude weight of one element toward unit direction `u`.
    Scalar element_directivity(const Vector3<Scalar> &u, Scalar wavenumber) const
    {
        if (element_aperture_ == Scalar(0))
            return Scalar(1);
        const Scalar c = u.dot(normal_);
        if (c < Scalar(0))
            return Scalar(0);
        const Scalar s = std::sqrt(std::max(Scalar(0), Scalar(1) - c * c));
        const Scalar x = wavenumber * element_aperture_ / Scalar(2) * s;
        if (x < Scalar(1e-8))
            return Scalar(1);
        return Scalar(2) * static_cast<Scalar>(std::cyl_bessel_j(1.0, static_cast<double>(x))) / x;
    }

private:
    std::vector<int> ids_;
    Positions positions_;
    Vector3<Scalar> normal_;
    Scalar element_aperture_;
    std::unordered_map<int, Eigen::Index> index_;
};

struct Pairing
{
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> unpaired;
};

/// Phase of the incident wave at every element, -k (p . d), wrapped onto (-pi, pi]. The
/// coordinate origin is the phase reference.
template <typename Scalar>
RealVector<Scalar> incident_phases(const ArrayGeometry<Scalar> &geometry, const PlaneWave<Scalar> &wave)
{
    const RealVector<Scalar> raw = -wave.wavenumber() * (geometry.positions().transpose() * wave.direction());
    return raw.unaryExpr([](Scalar v) { return normalize_angle(v); });
}

/// Groups elements whose projections onto `reflect_dir` lie within `tolerance` of the group's
/// first (smallest) projection, then pairs each group greedily in ascending id order.
template <typename Scalar>
Pairing pair_reflectors(const ArrayGeometry<Scalar> &geometry, const std::type_identity_t<Vector3<Scalar>> &reflect_dir,
                        std::type_identity_t<Scalar> tolerance)
{
    if (std::abs(reflect_dir.norm() - Scalar(1)) > Scalar(1e-9))
        throw DomainError("reflection direction must be a unit vector");
    if (!(tolerance >= 0))
        throw DomainError("pairing tolerance must be non-negative");

    const RealVector<Scalar> proj = geometry.positions().transpose() * reflect_dir;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(geometry.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (proj(a) != proj(b))
            return proj(a) < proj(b);
        return geometry.ids()[a] < geometry.ids()[b];
    });

    Pairing out;
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && proj(order[end]) - proj(order[start]) <= tolerance)
            ++end;
        std::vector<int> group;
        for (std::size_t i = start; i < end; ++i)
            group.push_back(geometry.ids()[order[i]]);
        std::sort(group.begin(), group.end());
        std::size_t i = 0;
        for (; i + 1 < group.size(); i += 2)
            out.pairs.emplace_back(group[i], group[i + 1]);
        if (i < group.size())
            out.unpaired.push_back(group[i]);
        start = end;
    }
    return out;
}

} // namespace uaris
