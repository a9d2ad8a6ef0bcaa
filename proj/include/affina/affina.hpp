#pragma once

#include "affina/closure.hpp"
#include "affina/congruence.hpp"
#include "affina/cp_analysis.hpp"
#include "affina/enumerate.hpp"
#include "affina/error.hpp"
#include "affina/numeric.hpp"
#include "affina/object.hpp"
#include "affina/oracle.hpp"
#include "affina/polynomial.hpp"
#include "affina/rewriting.hpp"
#include "affina/symbol.hpp"
#include "affina/text.hpp"
