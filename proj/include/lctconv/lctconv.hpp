#ifndef LCTCONV_LCTCONV_HPP
#define LCTCONV_LCTCONV_HPP

#include "lctconv/convolution.hpp"
#include "lctconv/errors.hpp"
#include "lctconv/grid.hpp"
#include "lctconv/io.hpp"
#include "lctconv/lct.hpp"
#include "lctconv/params.hpp"
#include "lctconv/solver.hpp"
#include "lctconv/theorems.hpp"

#endif // LCTCONV_LCTCONV_HPP
