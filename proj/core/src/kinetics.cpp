#include "allee/kinetics.hpp"

#include <cmath>
#include <string>

#include "allee/errors.hpp"

namespace allee {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace

void Params::validate() const {
  require(std::isfinite(saturation) && saturation >= 0.0, "saturation must be finite and >= 0");
  require(std::isfinite(interference) && interference >= 0.0, "interference must be finite and >= 0");
  require(std::isfinite(conversion) && conversion > 0.0, "conversion must be finite and > 0");
  require(std::isfinite(growth) && growth > 0.0, "growth must be finite and > 0");
  require(std::isfinite(mortality) && mortality > 0.0, "mortality must be finite and > 0");
}

void Spatial::validate() const {
  require(std::isfinite(diffusion) && diffusion > 0.0, "diffusion ratio must be finite and > 0");
  require(std::isfinite(length) && length > 0.0, "domain length must be finite and > 0");
}

Rates kinetics(double u, double v, const Params& p) {
  if (!std::isfinite(u) || !std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite state");
  p.validate();
  return kinetics_raw(u, v, p);
}

Mat2 jacobian(double u, double v, const Params& p) {
  if (!std::isfinite(u) || !std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite state");
  p.validate();
  return jacobian_raw(u, v, p);
}

Mat2 jacobian_fd(double u, double v, const Params& p, double h) {
  const Rates up = kinetics(u + h, v, p), um = kinetics(u - h, v, p);
  const Rates vp = kinetics(u, v + h, p), vm = kinetics(u, v - h, p);
  return {(up.prey - um.prey) / (2 * h), (vp.prey - vm.prey) / (2 * h),
          (up.predator - um.predator) / (2 * h), (vp.predator - vm.predator) / (2 * h)};
}

}  // namespace allee
