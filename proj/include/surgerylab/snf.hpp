#ifndef SURGERYLAB_SNF_HPP
#define SURGERYLAB_SNF_HPP

#include <string>
#include <vector>

namespace surgerylab {

// Dense integer matrix, row major.  Entries stay well inside 64 bits for the
// small presentation matrices this project works with; the SNF routine
// checks for overflow on every arithmetic step and throws if it would occur.
class IntMat {
  public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    long long at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    static IntMat identity(int n);
    IntMat mul(const IntMat& other) const;  // overflow-checked product
    bool operator==(const IntMat&) const = default;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<long long> a_;
};

// Smith normal form D = U * A * V with U, V unimodular and the diagonal of D
// the invariant factors d1 | d2 | ... .
struct SmithResult {
    IntMat d;
    IntMat u;  // rows() x rows(), det ±1
    IntMat v;  // cols() x cols(), det ±1
    std::vector<long long> invariant_factors() const;  // nonzero diagonal, abs values
};

SmithResult smith_normal_form(const IntMat& a);

// |det| of a square integer matrix by fraction-free elimination. Throws on overflow.
long long det_abs(const IntMat& a);

// Finitely generated abelian group in canonical form: free rank plus invariant
// factors d1 | d2 | ... , each >= 2.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> torsion;

    bool operator==(const AbelianGroup&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string str() const;  // e.g. "Z + Z/5", "0"
};

// Cokernel of the subgroup of Z^cols spanned by the rows of `rel`.
AbelianGroup cokernel(const IntMat& rel);

}  // namespace surgerylab

#endif
