#ifndef SURGERYLAB_TRIANGULATION_HPP
#define SURGERYLAB_TRIANGULATION_HPP

#include <array>
#include <string>
#include <vector>

#include "surgerylab/pd.hpp"

namespace surgerylab {

// Ideal triangulation of a link exterior built from the crossing-octahedron
// decomposition: four tetrahedra per crossing arranged around the vertical
// axis, wall faces glued along the arcs, tent faces folded across the
// strands at each crossing.  Besides the torus cusp at each link component,
// the complex carries two material vertex classes (the points above and
// below the diagram); they take part in the edge equations but have no
// peripheral structure.
//
// Vertex slots per tetrahedron: 0 = upper pole, 1 = lower pole, 2 and 3 the
// two strand-end vertices of the quadrant.  Face i is opposite vertex i.

// Edge slots 0..5 enumerate vertex pairs 01, 02, 03, 12, 13, 23.
int edge_slot(int v, int w);
std::array<int, 2> edge_vertices(int e);
// Opposite-edge pairs carry the same shape parameter: 01|23 -> 0,
// 02|13 -> 1, 03|12 -> 2.
int edge_param_index(int e);

struct Tetrahedron {
    std::array<int, 4> neighbor{-1, -1, -1, -1};
    std::array<int, 4> glued_face{-1, -1, -1, -1};
    std::array<std::array<int, 4>, 4> perm{};  // perm[f][slot] = image slot
};

struct CurveStep {
    int tet;
    int vertex;
    int face_in;
    int face_out;
};
using PeripheralCurve = std::vector<CurveStep>;

struct CombinatoricsReport {
    struct Entry {
        std::string check;
        bool pass;
        std::string detail;
    };
    std::vector<Entry> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

class IdealTriangulation {
  public:
    IdealTriangulation() = default;
    IdealTriangulation(std::vector<Tetrahedron> tets, int cusp_count_hint);

    int tet_count() const { return int(tets_.size()); }
    const Tetrahedron& tet(int t) const { return tets_[t]; }
    std::vector<Tetrahedron>& tets_mutable() { return tets_; }

    int edge_class(int t, int e) const { return edge_class_[size_t(t) * 6 + e]; }
    int edge_class_count() const { return edge_class_count_; }
    int vertex_class(int t, int v) const { return vertex_class_[size_t(t) * 4 + v]; }
    int vertex_class_count() const { return vertex_class_count_; }

    // Cusps are the vertex classes with torus links, indexed by the link
    // component they come from.
    int cusp_count() const { return int(cusp_class_.size()); }
    int cusp_of_class(int vc) const;            // -1 for material classes
    int class_of_cusp(int cusp) const { return cusp_class_[cusp]; }
    int link_euler(int vc) const { return class_euler_[vc]; }

    bool has_peripheral_curves() const { return !meridians_.empty(); }
    const PeripheralCurve& meridian(int cusp) const { return meridians_[cusp]; }
    const PeripheralCurve& blackboard_longitude(int cusp) const { return longitudes_[cusp]; }
    int longitude_correction(int cusp) const { return longitude_correction_[cusp]; }

    void set_peripheral(std::vector<PeripheralCurve> meridians,
                        std::vector<PeripheralCurve> longitudes,
                        std::vector<int> corrections);

    CombinatoricsReport check_combinatorics() const;
    std::string to_json() const;

    // recompute union-find classes after editing tets (used by tests that
    // corrupt gluings deliberately)
    void rebuild_classes(int cusp_count_hint);

  private:
    std::vector<Tetrahedron> tets_;
    std::vector<int> edge_class_, vertex_class_;
    int edge_class_count_ = 0, vertex_class_count_ = 0;
    std::vector<int> cusp_class_;    // cusp index -> vertex class
    std::vector<int> class_cusp_;    // vertex class -> cusp index or -1
    std::vector<int> class_euler_;   // Euler characteristic of each vertex link
    std::vector<PeripheralCurve> meridians_, longitudes_;
    std::vector<int> longitude_correction_;

    friend IdealTriangulation octahedral_triangulation(const LinkDiagram&);
};

// Builds the triangulation; rejects split, crossingless, or non-planar
// diagrams.  Peripheral curves are attached by peripheral_curves().
IdealTriangulation octahedral_triangulation(const LinkDiagram& d);

// Attaches meridians (small loops around an arc) and Seifert longitudes
// (blackboard parallel corrected by -writhe meridians).
IdealTriangulation peripheral_curves(IdealTriangulation t, const LinkDiagram& d);

// Algebraic intersection number of two peripheral curves on a cusp torus.
int intersection_number(const IdealTriangulation& t, const PeripheralCurve& a,
                        const PeripheralCurve& b);

}  // namespace surgerylab

#endif
