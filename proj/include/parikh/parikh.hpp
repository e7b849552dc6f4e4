#pragma once

#include "parikh/error.hpp"
#include "parikh/integer.hpp"
#include "parikh/int_vector.hpp"
#include "parikh/geometry.hpp"
#include "parikh/normalform.hpp"
#include "parikh/automata.hpp"
#include "parikh/decision.hpp"
#include "parikh/oracle.hpp"
#include "parikh/fixtures.hpp"
#include "parikh/io.hpp"
