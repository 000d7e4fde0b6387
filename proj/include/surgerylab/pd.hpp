#ifndef SURGERYLAB_PD_HPP
#define SURGERYLAB_PD_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surgerylab {

// Error with a character position in the source text (or -1 when the input
// was not textual).
struct ParseError : std::runtime_error {
    int position;
    ParseError(const std::string& msg, int pos = -1)
        : std::runtime_error(pos >= 0 ? msg + " (at position " + std::to_string(pos) + ")" : msg),
          position(pos) {}
};

struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing in PD convention: strands[0..3] are the arc labels in
// counterclockwise order starting at the incoming under-strand.  The
// under-strand runs strands[0] -> strands[2]; the over-strand direction is
// recorded by over_in_d (true: strands[3] -> strands[1], which is the
// positive crossing).  See docs/pd-format.md for the picture.
struct Crossing {
    std::array<int, 4> strands{};
    bool over_in_d = true;

    int sign() const { return over_in_d ? +1 : -1; }
    int over_in() const { return over_in_d ? strands[3] : strands[1]; }
    int over_out() const { return over_in_d ? strands[1] : strands[3]; }
    int under_in() const { return strands[0]; }
    int under_out() const { return strands[2]; }

    bool operator==(const Crossing&) const = default;
};

// Parametric twist region on exactly two arcs.  Instantiating the integer
// parameter n yields 2|n| crossings of sign handedness*sign(n).
struct TwistBox {
    std::string id;
    int arc_p = 0;
    int arc_q = 0;
    int handedness = +1;

    bool operator==(const TwistBox&) const = default;
};

// A corner of the diagram graph: arc end attached to a crossing slot.
struct ArcEnd {
    int crossing = -1;  // -1: free loop
    int slot = -1;
    bool operator==(const ArcEnd&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    int crossing_count = 0;
    int arc_count = 0;
    int component_count = 0;
};

class LinkDiagram {
  public:
    LinkDiagram() = default;
    LinkDiagram(std::vector<Crossing> crossings, std::vector<TwistBox> boxes,
                std::vector<int> free_loops, std::string name = "");

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<TwistBox>& twist_boxes() const { return twist_boxes_; }
    const std::vector<int>& free_loops() const { return free_loops_; }
    const std::string& name() const { return name_; }

    // Components as arc cycles in travel order, indexed by smallest arc label.
    const std::vector<std::vector<int>>& components() const { return components_; }
    int component_count() const { return int(components_.size()); }
    int component_of_arc(int arc) const;
    int arc_count() const { return int(arc_heads_.size()); }

    ArcEnd arc_head(int arc) const;  // where the arc points to
    ArcEnd arc_tail(int arc) const;

    ValidationReport validate() const;

    // Half-sum of signed crossings between distinct components.
    int linking_number(int comp_i, int comp_j) const;
    int writhe(int comp_i) const;

    LinkDiagram reverse_component(int comp_i) const;
    LinkDiagram instantiate_twists(const std::string& box_id, int n) const;
    bool has_twist_boxes() const { return !twist_boxes_.empty(); }

    // Faces of the diagram on S^2, from the rotation system.  Each face is a
    // cycle of (arc, forward?) sides; `forward` means the arc is traversed
    // along its orientation.
    struct FaceSide {
        int arc;
        bool forward;
        bool operator==(const FaceSide&) const = default;
    };
    std::vector<std::vector<FaceSide>> faces() const;

    std::string to_text() const;
    std::string to_json() const;
    uint64_t hash() const;

    bool structurally_equal(const LinkDiagram& other) const;

    static LinkDiagram parse(const std::string& text);       // PD[...] format
    static LinkDiagram parse_json(const std::string& text);  // JSON mirror

  private:
    std::vector<Crossing> crossings_;
    std::vector<TwistBox> twist_boxes_;
    std::vector<int> free_loops_;
    std::string name_;

    std::vector<std::vector<int>> components_;
    std::vector<int> arc_component_;             // by arc label
    std::vector<std::pair<int, ArcEnd>> arc_heads_, arc_tails_;

    void derive_structure();  // orientations, signs, components; throws ParseError
    friend LinkDiagram make_twist_chain(const LinkDiagram&, const TwistBox&, int);
};

// Builds PD crossings for braid words; used by tests and generators.
// Word letters: +k / -k for sigma_k / sigma_k^{-1} on `strands` strands.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);

}  // namespace surgerylab

#endif
