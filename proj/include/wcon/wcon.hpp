#pragma once

// Umbrella header for the weighted interaction and connector algebras.

#include "wcon/errors.hpp"
#include "wcon/free_value.hpp"
#include "wcon/interaction.hpp"
#include "wcon/model.hpp"
#include "wcon/oracle.hpp"
#include "wcon/parser.hpp"
#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"
#include "wcon/schemes.hpp"
#include "wcon/semiring.hpp"
#include "wcon/table.hpp"
#include "wcon/wac.hpp"
#include "wcon/wai.hpp"
