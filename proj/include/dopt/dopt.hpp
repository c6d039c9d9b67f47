#ifndef DOPT_DOPT_HPP
#define DOPT_DOPT_HPP

#include "dopt/chebyshev.hpp"
#include "dopt/design.hpp"
#include "dopt/domain.hpp"
#include "dopt/errors.hpp"
#include "dopt/experiment.hpp"
#include "dopt/lebesgue.hpp"
#include "dopt/logdet.hpp"
#include "dopt/maxvol.hpp"
#include "dopt/models.hpp"
#include "dopt/multi_index.hpp"
#include "dopt/optimizer.hpp"
#include "dopt/rng.hpp"
#include "dopt/samplers.hpp"
#include "dopt/sobol.hpp"
#include "dopt/surrogate.hpp"

#endif
