#include <doctest.h>

#include "properties.hpp"

using namespace allee::testing;

namespace {
void expect(const PropertyResult& r) {
  INFO(r.detail);
  CHECK(r.ok);
}
}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("jacobians match finite differences") { expect(jacobian_agreement()); }
  TEST_CASE("equilibrium residuals") { expect(equilibrium_residuals()); }
  TEST_CASE("diffusion conserves mass") { expect(diffusion_mass_conservation()); }
  TEST_CASE("cosine modes decay at their rates") { expect(cosine_mode_decay()); }
  TEST_CASE("continuation solutions respect the steady bounds") { expect(continuation_bounds()); }
  TEST_CASE("branches are reversible") { expect(branch_reversibility()); }
  TEST_CASE("spatial spectrum has quadrantal symmetry") { expect(quadrantal_symmetry()); }
  TEST_CASE("seeded runs are deterministic") { expect(seeded_determinism()); }
}
