#pragma once

#include "shadowlab/numeric.hpp"
#include "shadowlab/word.hpp"
#include "shadowlab/enumeration.hpp"
#include "shadowlab/bad_enumeration.hpp"
#include "shadowlab/validation.hpp"
#include "shadowlab/rate.hpp"
#include "shadowlab/metric.hpp"
#include "shadowlab/pseudo_orbit.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/generator.hpp"
#include "shadowlab/probe.hpp"
#include "shadowlab/counterexample.hpp"
