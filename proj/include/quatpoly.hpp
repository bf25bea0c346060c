#ifndef QUATPOLY_HPP
#define QUATPOLY_HPP

#include "quatpoly/barycenter.hpp"
#include "quatpoly/complex_bridge.hpp"
#include "quatpoly/errors.hpp"
#include "quatpoly/gt_grassmann.hpp"
#include "quatpoly/hermitian_eigen.hpp"
#include "quatpoly/hyperbolic.hpp"
#include "quatpoly/polygon.hpp"
#include "quatpoly/quat_matrix.hpp"
#include "quatpoly/quaternion.hpp"
#include "quatpoly/random.hpp"

#endif // QUATPOLY_HPP
