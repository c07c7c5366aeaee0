#ifndef POLYRANK_POLYRANK_HPP
#define POLYRANK_POLYRANK_HPP

#include "polyrank/bounds.hpp"
#include "polyrank/certify.hpp"
#include "polyrank/errors.hpp"
#include "polyrank/exact_linalg.hpp"
#include "polyrank/gaussian_rational.hpp"
#include "polyrank/genericity.hpp"
#include "polyrank/groebner.hpp"
#include "polyrank/io.hpp"
#include "polyrank/jets.hpp"
#include "polyrank/monomial.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/pipeline.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/rank_strata.hpp"
#include "polyrank/report.hpp"
#include "polyrank/rng.hpp"
#include "polyrank/shear.hpp"
#include "polyrank/shear_chain.hpp"
#include "polyrank/spray_p1.hpp"

#endif
