#pragma once

#define TROLLCAST_VERSION "0.1.0"
