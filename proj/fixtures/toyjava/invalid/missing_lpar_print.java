public class Example {
  public static void main(String[] args) {
    int n = 5;
    while(0 < n) {
      n = n - 1;
    }
    System.out.println n);
  }
}
