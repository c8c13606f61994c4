#pragma once

#include "polycurve/arclength.hpp"
#include "polycurve/circle_ansatz.hpp"
#include "polycurve/conservation.hpp"
#include "polycurve/covariant.hpp"
#include "polycurve/derivatives.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/energy.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/families.hpp"
#include "polycurve/field.hpp"
#include "polycurve/flow.hpp"
#include "polycurve/frenet.hpp"
#include "polycurve/jet.hpp"
#include "polycurve/lagrangians.hpp"
#include "polycurve/residuals.hpp"
#include "polycurve/space_form.hpp"
#include "polycurve/spectral.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"
