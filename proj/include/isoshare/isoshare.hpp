#pragma once

#include "isoshare/binary_field.hpp"
#include "isoshare/bits.hpp"
#include "isoshare/codes.hpp"
#include "isoshare/curve.hpp"
#include "isoshare/error.hpp"
#include "isoshare/isogeny.hpp"
#include "isoshare/linear_code.hpp"
#include "isoshare/point_codec.hpp"
#include "isoshare/prime_field.hpp"
#include "isoshare/scheme.hpp"
#include "isoshare/share_file.hpp"
#include "isoshare/cli.hpp"
