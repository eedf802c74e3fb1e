public class Arithmetic {
  public static void main(String[] args) {
    int a = 2 * (3 + 4);
    int b = a / 7 - 1;
    System.out.println(a == b);
  }
}
