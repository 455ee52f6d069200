// @iocbench-harness
// Bubble sort with early exit.

function bubbleSort(items) {
  var arr = items.slice();
  var n = arr.length;
  for (var i = 0; i < n - 1; i++) {
    var swapped = false;
    for (var j = 0; j < n - 1 - i; j++) {
      if (arr[j] > arr[j + 1]) {
        var tmp = arr[j];
        arr[j] = arr[j + 1];
        arr[j + 1] = tmp;
        swapped = true;
      }
    }
    if (!swapped) {
      break;
    }
  }
  return arr;
}

var sample = [5, 3, 8, 1, 9, 2];
console.log("sorted:", bubbleSort(sample).join(","));
