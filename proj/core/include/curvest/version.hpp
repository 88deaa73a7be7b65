#pragma once

#define CURVEST_VERSION "0.1.0"
