#pragma once

#include "dilates/rational.hpp"
#include "dilates/core.hpp"
#include "dilates/sumsets.hpp"
#include "dilates/extremal.hpp"
#include "dilates/lp_build.hpp"
#include "dilates/simplex.hpp"
#include "dilates/lp_solve.hpp"
#include "dilates/certificate.hpp"
#include "dilates/verify.hpp"
#include "dilates/certify.hpp"
#include "dilates/empirical.hpp"
#include "dilates/fourier.hpp"
#include "dilates/witness_search.hpp"
#include "dilates/plot.hpp"
