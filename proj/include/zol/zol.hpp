#pragma once

#include "zol/ambient.hpp"
#include "zol/asymptotics.hpp"
#include "zol/ef_game.hpp"
#include "zol/errors.hpp"
#include "zol/eval.hpp"
#include "zol/formula.hpp"
#include "zol/morphisms.hpp"
#include "zol/parallel.hpp"
#include "zol/parser.hpp"
#include "zol/rng.hpp"
#include "zol/stochastics.hpp"
#include "zol/strategy.hpp"
#include "zol/structure.hpp"
#include "zol/structure_io.hpp"
