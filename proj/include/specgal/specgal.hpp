#ifndef SPECGAL_SPECGAL_HPP
#define SPECGAL_SPECGAL_HPP

#include "specgal/basis.hpp"
#include "specgal/cdr_operator.hpp"
#include "specgal/coefficients.hpp"
#include "specgal/dense.hpp"
#include "specgal/errors.hpp"
#include "specgal/fast_solver.hpp"
#include "specgal/gmres.hpp"
#include "specgal/lgl.hpp"
#include "specgal/polynomial.hpp"
#include "specgal/problems.hpp"
#include "specgal/studies.hpp"
#include "specgal/tensor.hpp"

#endif // SPECGAL_SPECGAL_HPP
