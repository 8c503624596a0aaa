// clean: buffer-overrun
int f(int n) {
  int a[8];
  if (n > 0) {
    a[n % 8] = 1;
  }
  return 0;
}
