#ifndef IRR_IRR_HPP
#define IRR_IRR_HPP

#include "irr/term.hpp"
#include "irr/reduce.hpp"
#include "irr/convert.hpp"
#include "irr/typecheck.hpp"
#include "irr/subset.hpp"
#include "irr/model.hpp"
#include "irr/frontend/syntax.hpp"
#include "irr/frontend/lexer.hpp"
#include "irr/frontend/parser.hpp"
#include "irr/frontend/elaborate.hpp"
#include "irr/frontend/printer.hpp"
#include "irr/frontend/driver.hpp"

#endif  // IRR_IRR_HPP
