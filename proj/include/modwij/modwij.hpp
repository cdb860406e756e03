#pragma once

#include "modwij/bigint.hpp"
#include "modwij/cantor.hpp"
#include "modwij/classify.hpp"
#include "modwij/convergence.hpp"
#include "modwij/density.hpp"
#include "modwij/exceptional_set.hpp"
#include "modwij/expr.hpp"
#include "modwij/grid.hpp"
#include "modwij/lemma_modulus.hpp"
#include "modwij/metric.hpp"
#include "modwij/modulus.hpp"
#include "modwij/modulus_checks.hpp"
#include "modwij/natset.hpp"
#include "modwij/piecewise_affine.hpp"
#include "modwij/sequences.hpp"
#include "modwij/serialize.hpp"
