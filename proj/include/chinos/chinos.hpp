#pragma once

#include "chinos/classical.hpp"
#include "chinos/fock.hpp"
#include "chinos/games.hpp"
#include "chinos/quantum.hpp"
#include "chinos/rational.hpp"
#include "chinos/scalar.hpp"
#include "chinos/semiclassical.hpp"
#include "chinos/session.hpp"
#include "chinos/solver.hpp"
