#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wdp/picard.hpp"

namespace wdp {

// ADE type as a multiset of components, e.g. {"A1":2, "D4":1} for D4+2A1.
using DynkinType = std::map<std::string, int>;

// Classifies a configuration from its Gram matrix of pairwise products.
// Off-diagonal entries must be 0 or 1, every diagonal entry -2, and each
// connected component an ADE tree. Returns nullopt otherwise.
std::optional<DynkinType> classify_dynkin(const std::vector<std::vector<long>>& gram);
DynkinType parse_dynkin(const std::string& text);
// Canonical text: components by family and rank, e.g. "D4+2A1" -> "2A1+D4".
std::string format_dynkin(const DynkinType& t);

// A weak del Pezzo type: lattice plus its irreducible (-2)-curves.
class SurfaceModel {
public:
  SurfaceModel(PicardLattice lattice, std::vector<DivisorClass> simple_roots, std::string name,
               std::optional<int> line_count = std::nullopt);

  const PicardLattice& lattice() const { return d_->lattice; }
  int degree() const { return d_->lattice.degree(); }
  const std::string& name() const { return d_->name; }
  // "X_{4,A3,5}" style tag.
  std::string tag() const;
  std::optional<int> line_count() const { return d_->line_count; }
  const DynkinType& dynkin() const { return d_->dynkin; }

  const std::vector<DivisorClass>& simple_roots() const { return d_->simple; }
  // All (-2)-classes, and the positive roots of the curve configuration.
  const std::vector<DivisorClass>& roots() const { return d_->roots; }
  const std::vector<DivisorClass>& effective_roots() const { return d_->eff_roots; }
  // Roots that are neither effective nor anti-effective.
  const std::vector<DivisorClass>& slo_roots() const { return d_->slo_roots; }
  const std::vector<DivisorClass>& minus_one_classes() const { return d_->lines; }
  const std::vector<DivisorClass>& irreducible_lines() const { return d_->irr_lines; }
  const std::vector<DivisorClass>& reducible_lines() const { return d_->red_lines; }
  // Nef classes bounding the effective cone on models of degree 8 and 9,
  // where (-1)- and (-2)-curves alone do not certify nefness.
  const std::vector<DivisorClass>& nef_boundary() const { return d_->nef_boundary; }

  // C_ij = -R_i.R_j over the simple roots, with adjugate and determinant.
  const std::vector<std::vector<long>>& cartan() const { return d_->cartan; }
  const std::vector<std::vector<long>>& cartan_adjugate() const { return d_->adj; }
  long cartan_det() const { return d_->det; }

  bool is_effective_root(const DivisorClass& r) const;
  bool is_irreducible_line(const DivisorClass& c) const;

  // Integer coordinates of D in the simple-root basis, if D lies in their
  // integer span. Uses the adjugate of the Cartan matrix, all exact.
  std::optional<std::vector<long>> root_coordinates(const DivisorClass& d) const;

private:
  struct Data {
    PicardLattice lattice;
    std::string name;
    std::optional<int> line_count;
    DynkinType dynkin;
    std::vector<DivisorClass> simple, roots, eff_roots, slo_roots;
    std::vector<DivisorClass> lines, irr_lines, red_lines, nef_boundary;
    // Cartan matrix C_ij = -R_i.R_j, its adjugate and determinant.
    std::vector<std::vector<long>> cartan, adj;
    long det = 1;
  };
  std::shared_ptr<Data> d_;
  friend SurfaceModel with_nef_boundary(SurfaceModel, std::vector<DivisorClass>);
};

// Models of degree 8 and 9 used as blow-down targets and in the cyclic
// strong tables: the plane, F0 = P1 x P1, F1 and F2 (with its (-2)-curve).
SurfaceModel plane_model();
SurfaceModel f0_model();
SurfaceModel f1_model();
SurfaceModel f2_model();

// Del Pezzo model (no (-2)-curves) of the given degree, 1..9.
SurfaceModel del_pezzo(int degree);

struct SurfaceCatalog {
  int degree = 0;
  std::vector<SurfaceModel> entries;
  // Exact name match; throws InputError with a suggestion otherwise.
  const SurfaceModel& find(const std::string& name) const;
};

// Degrees 3..7 hold the tabulated surface types (|I^irr| checked at load);
// degrees 1 and 2 hold representatives found by configuration search plus the
// explicit A1+2A3 surface in degree 2.
const SurfaceCatalog& catalog_load(int degree);

// Expected |I^irr| and good-S counts used to validate the catalog.
struct CatalogRow {
  std::string name;
  std::vector<std::string> roots;
  int lines;
  int good_zero_classes;  // -1 when the table gives no number
};
const std::vector<CatalogRow>& catalog_rows(int degree);

// Lexicographically least simple system of the given type among positive
// roots (marker.R > 0) of the degree-d lattice; nullopt if none exists.
std::optional<std::vector<DivisorClass>> find_configuration(int degree, const DynkinType& type);

}  // namespace wdp
