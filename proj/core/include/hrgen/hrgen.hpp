#pragma once

#include "hrgen/cnf.hpp"
#include "hrgen/counting.hpp"
#include "hrgen/dot.hpp"
#include "hrgen/error.hpp"
#include "hrgen/fixtures.hpp"
#include "hrgen/grammar.hpp"
#include "hrgen/hypergraph.hpp"
#include "hrgen/isomorphism.hpp"
#include "hrgen/json_io.hpp"
#include "hrgen/oracle.hpp"
#include "hrgen/random.hpp"
#include "hrgen/sampler.hpp"
