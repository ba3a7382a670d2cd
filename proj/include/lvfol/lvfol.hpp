#ifndef LVFOL_LVFOL_HPP
#define LVFOL_LVFOL_HPP

#include "lvfol/error.hpp"
#include "lvfol/qfield.hpp"
#include "lvfol/mpoly.hpp"
#include "lvfol/text.hpp"
#include "lvfol/forms.hpp"
#include "lvfol/foliation.hpp"
#include "lvfol/genericity.hpp"
#include "lvfol/branched.hpp"

#endif  // LVFOL_LVFOL_HPP
