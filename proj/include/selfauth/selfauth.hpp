#pragma once

#include "selfauth/authenticator.hpp"
#include "selfauth/embedding.hpp"
#include "selfauth/error.hpp"
#include "selfauth/image_io.hpp"
#include "selfauth/metrics.hpp"
#include "selfauth/plane.hpp"
#include "selfauth/wavelet.hpp"
