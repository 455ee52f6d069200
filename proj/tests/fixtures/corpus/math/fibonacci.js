// Memoized Fibonacci.
var cache = { 0: 0, 1: 1 };

function fib(n) {
  if (n in cache) {
    return cache[n];
  }
  var value = fib(n - 1) + fib(n - 2);
  cache[n] = value;
  return value;
}

var seq = [];
var k = 0;
do {
  seq.push(fib(k));
  k++;
} while (k < 15);
