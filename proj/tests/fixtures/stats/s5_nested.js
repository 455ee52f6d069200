class Counter {
  constructor() {
    this.n = 0;
  }
  inc(by) {
    this.n += by || 1;
    return this;
  }
}

function outer(list) {
  var total = 0;
  list.forEach(function (x) {
    if (x > 0) total += x;
  });
  var twice = (y) => y > 0 ? y * 2 : 0;
  return total > 100 ? 100 : total;
}
